// Command-line front end: sbox metrics, exclusion analysis, weak-cipher demo,
// and the structural verification suites.
// Exit codes: 0 pass, 2 input error, 3 hypotheses fail, 4 trapdoor chain found.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpt/specfile.hpp"
#include "fpt/verify.hpp"

namespace {

using namespace fpt;

std::string hex(word v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

void emit(const json& doc, const std::string& format, const std::string& out_path) {
  if (!out_path.empty()) save_json(out_path, doc);
  if (format == "machine") std::printf("%s\n", doc.dump(2).c_str());
}

int cmd_sbox(const std::string& path, const std::string& format,
             const std::string& out_path) {
  const SBox box = load_sbox(path);
  const UniformityReport uni = differential_uniformity(box);
  const AntiInvarianceReport anti = anti_invariance_order(box);

  json weak = json::object();
  for (int d = 1; d < box.width; ++d)
    weak[std::to_string(d)] = is_weakly_uniform(box, 1 << d);

  json doc;
  doc["width"] = box.width;
  doc["delta"] = uni.delta;
  doc["apn"] = uni.apn;
  doc["weakly_uniform"] = weak;
  doc["anti_invariance_order"] = anti.order;
  doc["normalized"] = anti.normalized;
  emit(doc, format, out_path);
  if (format == "text") {
    std::printf("width=%d\n", box.width);
    std::printf("delta=%d APN=%s\n", uni.delta, uni.apn ? "yes" : "no");
    for (int d = 1; d < box.width; ++d)
      std::printf("weakly 2^%d-uniform=%s\n", d,
                  is_weakly_uniform(box, 1 << d) ? "yes" : "no");
    std::printf("anti-invariance order=%d%s\n", anti.order,
                anti.normalized ? " (normalized)" : "");
  }
  return 0;
}

std::vector<SearchFamily> pick_families(const CipherSpec& spec,
                                        const std::vector<std::string>& names) {
  std::vector<SearchFamily> families;
  if (!names.empty()) {
    for (const std::string& name : names) {
      if (name == "exhaustive")
        families.push_back(SearchFamily::exhaustive);
      else if (name == "product")
        families.push_back(SearchFamily::product);
      else if (name == "graph")
        families.push_back(SearchFamily::graph);
      else if (name == "wall_lifted")
        families.push_back(SearchFamily::wall_lifted);
      else
        throw std::invalid_argument("unknown search family \"" + name + "\"");
    }
    return families;
  }
  const int n = spec.width();
  if (2 * n <= 8) families.push_back(SearchFamily::exhaustive);
  if (n <= 6) families.push_back(SearchFamily::product);
  if (n <= 8) families.push_back(SearchFamily::graph);
  if (spec.layout.b >= 2) families.push_back(SearchFamily::wall_lifted);
  if (families.empty())
    throw std::invalid_argument(
        "no search family fits this width; pass --families explicitly");
  return families;
}

void print_chain(const PartitionChain& chain) {
  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    std::printf("  link %zu (dim %d):", i, chain.links[i].dim());
    for (word v : chain.links[i].basis()) std::printf(" %s", hex(v).c_str());
    std::printf("\n");
  }
}

int cmd_analyze(const std::string& path, const std::vector<std::string>& family_names,
                const std::string& variant_name, int jobs, const std::string& format,
                const std::string& out_path) {
  const CipherSpec spec = load_spec(path);
  const TheoremVariant variant = variant_name == "weak"
                                     ? TheoremVariant::weak_uniformity
                                     : TheoremVariant::standard;
  const auto families = pick_families(spec, family_names);
  const ExclusionReport report = check_exclusion_theorem(spec, variant, families, jobs);

  emit(exclusion_to_json(report), format, out_path);
  bool chain_found = false;
  for (const ChainConditions& v : report.verdicts) chain_found |= v.any();

  if (format == "text") {
    std::printf("variant: %s\n",
                variant == TheoremVariant::standard ? "standard" : "weak_uniformity");
    for (std::size_t i = 0; i < report.rounds.size(); ++i) {
      const RoundHypotheses& rh = report.rounds[i];
      std::printf("round %zu: composed=%s fixes_zero=%s strongly_proper=%s\n", i + 1,
                  rh.composed ? "yes" : "no", rh.fixes_zero ? "yes" : "no",
                  rh.strongly_proper ? "yes" : "no");
      for (std::size_t j = 0; j < rh.boxes.size(); ++j) {
        const BoxHypotheses& box = rh.boxes[j];
        std::printf("  box %zu: delta=%u apn=%s anti-invariance=%d admissible=[%d,%d]\n",
                    j + 1, box.delta, box.apn ? "yes" : "no", box.anti_order,
                    box.delta_lo, box.delta_hi);
      }
    }
    std::printf("best admissible delta: %d\n", report.best_delta);
    std::printf("hypotheses: %s\n", report.hypotheses_pass ? "PASS" : "FAIL");
    std::printf("chains found: %zu\n", report.chains.size());
    for (std::size_t c = 0; c < report.chains.size(); ++c) {
      const ChainConditions& v = report.verdicts[c];
      std::printf("chain %zu: two_cycle_at=%d products_at=%d trivial_d_at=%d "
                  "trivial_a_at=%d\n",
                  c + 1, v.two_cycle_at, v.products_at, v.trivial_d_at, v.trivial_a_at);
      print_chain(report.chains[c]);
    }
    if (chain_found)
      std::printf("verdict: condition-satisfying chain found\n");
    else
      std::printf("verdict: %s\n",
                  report.hypotheses_pass ? "PASS" : "hypotheses fail");
  }
  if (chain_found) return 4;
  return report.hypotheses_pass ? 0 : 3;
}

int cmd_demo(int s, int b, int r, bool apn, std::uint64_t seed, long samples,
             const std::string& out_dir, const std::string& format) {
  const WeakCipher weak = build_weak_cipher(s, b, r, seed, apn);
  const int n = weak.spec.width();

  std::uint64_t key_state = seed + 0x9e3779b97f4a7c15ull;
  RoundKeys keys;
  for (int i = 0; i < r; ++i) keys.push_back(rand_below(key_state, word{1} << n));

  const PairOracle oracle = [&](word p) { return encrypt(weak.spec, keys, p); };
  const AttackReport dist = distinguish(oracle, weak.chain, samples, seed);

  AttackReport recovery;
  const bool recovery_feasible = 2 * n <= kMaxWidth;
  if (recovery_feasible) recovery = recover_key_coset(weak.spec, keys, weak.chain, seed);

  std::filesystem::create_directories(out_dir);
  const auto at = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  save_json(at("weak_spec.json"), spec_to_json(weak.spec));
  save_json(at("weak_chain.json"), chain_to_json(weak.chain));
  json attack;
  attack["distinguisher"] = attack_to_json(dist);
  attack["key_recovery"] = recovery_feasible ? attack_to_json(recovery) : json();
  save_json(at("attack_report.json"), attack);

  if (format == "machine") {
    std::printf("%s\n", attack.dump(2).c_str());
  } else {
    std::printf("weak cipher: s=%d b=%d r=%d seed=%llu%s\n", s, b, r,
                static_cast<unsigned long long>(seed), apn ? " (APN boxes)" : "");
    std::printf("chain: %zu links, verified=%s\n", weak.chain.links.size(),
                weak.chain.verified() ? "yes" : "no");
    std::printf("distinguisher: %ld/%ld hits, rate %g (baseline %g)\n", dist.hits,
                dist.samples, dist.hit_rate, dist.baseline_expected);
    if (recovery_feasible)
      std::printf("key recovery: %d bits pinned, coset rep %s, true key inside: %s\n",
                  recovery.bits_recovered, hex(recovery.recovered_rep).c_str(),
                  recovery.contains_true_key ? "yes" : "no");
    else
      std::printf("key recovery skipped: pair labels need 2n <= %d\n", kMaxWidth);
    std::printf("wrote: %s %s %s\n", at("weak_spec.json").c_str(),
                at("weak_chain.json").c_str(), at("attack_report.json").c_str());
  }
  return 0;
}

int cmd_verify(const std::string& scope, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  const VerifyReport report = run_verify(scope, seed);
  json doc;
  doc["scope"] = scope;
  doc["seed"] = seed;
  doc["checks"] = json::array();
  for (const VerifyCheck& c : report.checks)
    doc["checks"].push_back(
        {{"label", c.label}, {"passed", c.passed}, {"total", c.total}, {"ok", c.ok()}});
  doc["ok"] = report.ok();
  emit(doc, format, out_path);
  if (format == "text") {
    for (const VerifyCheck& c : report.checks)
      std::printf("%s: %ld/%ld %s\n", c.label.c_str(), c.passed, c.total,
                  c.ok() ? "OK" : "FAIL");
    std::printf("overall: %s\n", report.ok() ? "OK" : "FAIL");
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partition-trapdoor analysis for long-key Feistel networks"};
  app.require_subcommand(1);

  std::string spec_path, out_path, out_dir = ".", format = "text",
              variant = "standard", scope = "all";
  std::vector<std::string> families;
  std::uint64_t seed = 1;
  long samples = 10000;
  int jobs = 1, s = 3, b = 2, r = 4;
  bool apn = false;

  CLI::App* sbox = app.add_subcommand("sbox", "difference metrics of one S-box");
  sbox->add_option("--spec", spec_path, "S-box JSON file")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "exclusion-theorem report");
  analyze->add_option("--spec", spec_path, "cipher spec JSON file")->required();
  analyze->add_option("--families", families,
                      "chain search families (exhaustive, product, graph, wall_lifted)")
      ->delimiter(',');
  analyze->add_option("--variant", variant, "theorem variant")
      ->check(CLI::IsMember({"standard", "weak"}));
  analyze->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* demo = app.add_subcommand("demo", "build and attack a weak cipher");
  demo->add_option("--s", s, "bits per brick");
  demo->add_option("--b", b, "brick count");
  demo->add_option("--r", r, "rounds");
  demo->add_flag("--apn", apn, "use the 3-bit APN box");
  demo->add_option("--samples", samples, "distinguisher sample count")
      ->check(CLI::PositiveNumber);
  demo->add_option("--out", out_dir, "output directory");

  CLI::App* verify = app.add_subcommand("verify", "structural verification suites");
  verify->add_option("scope", scope,
                     "goursat | feistel | converse | propsub | micro-group | all");

  for (CLI::App* sub : {sbox, analyze, verify}) {
    sub->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "machine"}));
    if (sub != verify)
      sub->add_option("--out", out_path, "write the machine report to this path");
  }
  verify->add_option("--out", out_path, "write the machine report to this path");
  demo->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "machine"}));
  for (CLI::App* sub : {demo, verify}) sub->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sbox->parsed()) return cmd_sbox(spec_path, format, out_path);
    if (analyze->parsed())
      return cmd_analyze(spec_path, families, variant, jobs, format, out_path);
    if (demo->parsed()) return cmd_demo(s, b, r, apn, seed, samples, out_dir, format);
    return cmd_verify(scope, seed, format, out_path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
