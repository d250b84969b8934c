// End-to-end checks of the fpt binary: exit codes, text verdicts, machine
// report stability, and demo artifact determinism. The binary path comes from
// the FPT_BIN environment variable or the compiled-in default.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "fpt/specfile.hpp"
#include "fpt/trapdoor.hpp"

using namespace fpt;

namespace {

std::string binary() {
  if (const char* env = std::getenv("FPT_BIN")) return env;
  return FPT_BIN_PATH;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct Scratch {
  std::filesystem::path dir;

  Scratch() {
    dir = std::filesystem::temp_directory_path() /
          ("fpt-cli-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter()++));
    std::filesystem::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  std::string at(const std::string& name) const { return (dir / name).string(); }

  static int& counter() {
    static int n = 0;
    return n;
  }
};

// zero-fixing non-affine generating table on 2 bits
std::vector<word> random_rho2(std::uint64_t& state) {
  for (;;) {
    std::vector<word> t{0, 0, 0, 0};
    for (int i = 1; i < 4; ++i) t[i] = rand_below(state, 4);
    if ((t[1] ^ t[2] ^ t[3]) != 0) return t;
  }
}

CipherSpec quiet_raw_spec() {
  std::uint64_t state = 2;
  std::vector<GeneratingFunction> rounds;
  for (int r = 0; r < 4; ++r)
    rounds.push_back(GeneratingFunction::from_table(2, random_rho2(state)));
  return CipherSpec(BrickLayout(2, 1), rounds);
}

std::string slurp(const std::string& path) {
  std::string out;
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  std::fclose(f);
  return out;
}

}  // namespace

TEST_CASE("sbox subcommand reports difference metrics") {
  Scratch tmp;
  save_json(tmp.at("cube.json"), json{{"table", {0, 1, 3, 4, 5, 6, 7, 2}}});

  const RunResult text = run("sbox --spec " + tmp.at("cube.json"));
  CHECK(text.code == 0);
  CHECK(text.out.find("delta=2 APN=yes") != std::string::npos);

  const RunResult machine =
      run("sbox --spec " + tmp.at("cube.json") + " --format machine");
  CHECK(machine.code == 0);
  const json doc = json::parse(machine.out);
  CHECK(doc["delta"] == 2);
  CHECK(doc["apn"] == true);
  CHECK(doc["width"] == 3);

  save_json(tmp.at("bad.json"), json{{"table", {0, 1, 1, 3, 4, 5, 6, 7}}});
  const RunResult bad = run("sbox --spec " + tmp.at("bad.json"));
  CHECK(bad.code == 2);
  CHECK(bad.out.find("duplicates") != std::string::npos);
}

TEST_CASE("analyze maps verdicts onto the exit-code contract") {
  Scratch tmp;
  save_json(tmp.at("strong.json"), spec_to_json(strong_demo_spec(4)));
  save_json(tmp.at("weak.json"), spec_to_json(build_weak_cipher(3, 2, 4, 7).spec));
  save_json(tmp.at("quiet.json"), spec_to_json(quiet_raw_spec()));

  const RunResult strong = run("analyze --spec " + tmp.at("strong.json") + " --jobs 4");
  CHECK(strong.code == 0);
  CHECK(strong.out.find("hypotheses: PASS") != std::string::npos);
  CHECK(strong.out.find("verdict: PASS") != std::string::npos);

  const RunResult weak = run("analyze --spec " + tmp.at("weak.json") + " --jobs 4");
  CHECK(weak.code == 4);
  CHECK(weak.out.find("verdict: condition-satisfying chain found") != std::string::npos);
  CHECK(weak.out.find("two_cycle_at=1") != std::string::npos);

  // raw tables fail the composed-round hypothesis but propagate no chain
  const RunResult quiet = run("analyze --spec " + tmp.at("quiet.json"));
  CHECK(quiet.code == 3);
  CHECK(quiet.out.find("verdict: hypotheses fail") != std::string::npos);

  CHECK(run("analyze --spec " + tmp.at("absent.json")).code == 2);
  CHECK(run("analyze --spec " + tmp.at("strong.json") + " --families exhaustive").code == 2);
  CHECK(run("analyze --spec " + tmp.at("strong.json") + " --families nonsense").code == 2);
}

TEST_CASE("machine reports are byte stable across runs") {
  Scratch tmp;
  save_json(tmp.at("weak.json"), spec_to_json(build_weak_cipher(3, 2, 4, 7).spec));
  const std::string args =
      "analyze --spec " + tmp.at("weak.json") + " --jobs 2 --format machine";
  const RunResult first = run(args);
  const RunResult second = run(args);
  CHECK(first.code == 4);
  CHECK(second.code == 4);
  CHECK(first.out == second.out);
  const json doc = json::parse(first.out);
  CHECK(doc["hypotheses_pass"] == false);
  CHECK(!doc["chains"].empty());
}

TEST_CASE("demo writes deterministic artifacts and attacks them") {
  Scratch tmp;
  const RunResult a = run("demo --seed 5 --out " + tmp.at("a"));
  const RunResult b = run("demo --seed 5 --out " + tmp.at("b"));
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out.find("rate 1 ") != std::string::npos);

  for (const char* name : {"weak_spec.json", "weak_chain.json", "attack_report.json"})
    CHECK(slurp(tmp.at("a") + "/" + name) == slurp(tmp.at("b") + "/" + name));

  const json report = load_json(tmp.at("a") + "/attack_report.json");
  CHECK(report["distinguisher"]["hit_rate"] == 1.0);
  CHECK(report["key_recovery"]["contains_true_key"] == true);
  const PartitionChain chain = chain_from_json(load_json(tmp.at("a") + "/weak_chain.json"));
  CHECK(chain.verified());
  const CipherSpec spec = load_spec(tmp.at("a") + "/weak_spec.json");
  CHECK(spec.round_count() == 4);

  const RunResult thin = run("demo --b 1 --out " + tmp.at("thin"));
  CHECK(thin.code == 2);
  CHECK(thin.out.find("walls require b >= 2") != std::string::npos);
}

TEST_CASE("verify subcommand summarizes the suites") {
  const RunResult goursat = run("verify goursat");
  CHECK(goursat.code == 0);
  CHECK(goursat.out.find("67/67 OK") != std::string::npos);

  Scratch tmp;
  const RunResult all =
      run("verify all --format machine --out " + tmp.at("verify.json"));
  CHECK(all.code == 0);
  const json doc = load_json(tmp.at("verify.json"));
  CHECK(doc["ok"] == true);
  CHECK(doc["checks"].size() == 11);

  const RunResult bogus = run("verify bogus");
  CHECK(bogus.code == 2);
  CHECK(bogus.out.find("unknown scope") != std::string::npos);
}

TEST_CASE("bare invocations and bad flags exit with the input-error code") {
  CHECK(run("").code == 2);
  CHECK(run("sbox").code == 2);
  CHECK(run("analyze --variant bogus --spec x.json").code == 2);
  CHECK(run("--help").code == 0);
}
