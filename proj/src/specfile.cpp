#include "fpt/specfile.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>

namespace fpt {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

const json& field(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key))
    fail(where, std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

word as_word(const json& v, const std::string& where) {
  if (v.is_number_unsigned() && v.get<std::uint64_t>() <= 0xffffffffull)
    return v.get<word>();
  if (v.is_number_integer()) {
    const auto sv = v.get<std::int64_t>();
    if (sv >= 0 && sv <= 0xffffffffll) return static_cast<word>(sv);
  }
  fail(where, "expected a non-negative 32-bit integer");
}

word uint_field(const json& doc, const char* key, const std::string& where) {
  return as_word(field(doc, key, where), where + "." + key);
}

std::vector<word> word_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of integers");
  std::vector<word> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_word(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// rethrow constructor complaints with the entry's location prepended
template <typename Build>
auto located(const std::string& where, Build build) {
  try {
    return build();
  } catch (const std::invalid_argument& err) {
    fail(where, err.what());
  }
}

GeneratingFunction round_from_json(const json& item, const BrickLayout& layout,
                                   const std::string& where) {
  if (!item.is_object()) fail(where, "expected an object");
  if (item.contains("table")) {
    auto table = word_array(item.at("table"), where + ".table");
    return located(where,
                   [&] { return GeneratingFunction::from_table(layout.width(), table); });
  }
  const json& sboxes = field(item, "sboxes", where);
  if (!sboxes.is_array() || std::ssize(sboxes) != layout.b)
    fail(where + ".sboxes", "expected " + std::to_string(layout.b) + " tables");
  std::vector<SBox> boxes;
  for (std::size_t j = 0; j < sboxes.size(); ++j) {
    const std::string at = where + ".sboxes[" + std::to_string(j) + "]";
    auto table = word_array(sboxes[j], at);
    boxes.push_back(located(at, [&] { return SBox(layout.s, std::move(table)); }));
  }
  auto rows = word_array(field(item, "lambda", where), where + ".lambda");
  LinearMap lambda =
      located(where + ".lambda", [&] { return LinearMap(layout.width(), std::move(rows)); });
  if (!lambda.invertible()) fail(where + ".lambda", "diffusion layer is singular");
  return located(where, [&] {
    return GeneratingFunction(ParallelSBox(layout, std::move(boxes)), std::move(lambda));
  });
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::invalid_argument(path + ": not valid JSON");
  return doc;
}

void save_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot open file for writing");
  out << doc.dump(2) << '\n';
}

CipherSpec spec_from_json(const json& doc) {
  const json& layout_doc = field(doc, "layout", "spec");
  const word s = uint_field(layout_doc, "s", "spec.layout");
  const word b = uint_field(layout_doc, "b", "spec.layout");
  const BrickLayout layout = located("spec.layout", [&] {
    return BrickLayout(static_cast<int>(s), static_cast<int>(b));
  });

  KeyMode mode = KeyMode::after_rho;
  if (doc.contains("key_mode")) {
    const json& m = doc.at("key_mode");
    if (m == "after")
      mode = KeyMode::after_rho;
    else if (m == "before")
      mode = KeyMode::before_rho;
    else
      fail("spec.key_mode", "expected \"after\" or \"before\"");
  }

  const json& rounds_doc = field(doc, "rounds", "spec");
  if (!rounds_doc.is_array() || rounds_doc.empty())
    fail("spec.rounds", "expected a non-empty array");
  std::vector<GeneratingFunction> rounds;
  for (std::size_t i = 0; i < rounds_doc.size(); ++i)
    rounds.push_back(
        round_from_json(rounds_doc[i], layout, "spec.rounds[" + std::to_string(i) + "]"));
  return located("spec", [&] { return CipherSpec(layout, std::move(rounds), mode); });
}

json spec_to_json(const CipherSpec& spec) {
  json doc;
  doc["layout"] = {{"s", spec.layout.s}, {"b", spec.layout.b}};
  doc["key_mode"] = spec.key_mode == KeyMode::after_rho ? "after" : "before";
  doc["rounds"] = json::array();
  for (const GeneratingFunction& f : spec.rounds) {
    json item;
    if (f.composed()) {
      item["sboxes"] = json::array();
      for (const SBox& box : f.gamma().boxes) item["sboxes"].push_back(box.table);
      item["lambda"] = f.lambda().rows();
    } else {
      item["table"] = f.table();
    }
    doc["rounds"].push_back(std::move(item));
  }
  return doc;
}

CipherSpec load_spec(const std::string& path) { return spec_from_json(load_json(path)); }

SBox sbox_from_json(const json& doc) {
  auto table = word_array(field(doc, "table", "sbox"), "sbox.table");
  int width = 0;
  while ((std::size_t{1} << width) < table.size()) ++width;
  return located("sbox.table", [&] { return SBox(width, std::move(table)); });
}

SBox load_sbox(const std::string& path) { return sbox_from_json(load_json(path)); }

json chain_to_json(const PartitionChain& chain) {
  json doc;
  doc["pair_width"] = chain.pair_width;
  doc["links"] = json::array();
  for (const Subspace& link : chain.links) doc["links"].push_back(link.basis());
  doc["verified"] = chain.link_verified;
  return doc;
}

PartitionChain chain_from_json(const json& doc) {
  PartitionChain chain;
  chain.pair_width = static_cast<int>(uint_field(doc, "pair_width", "chain"));
  const json& links = field(doc, "links", "chain");
  if (!links.is_array() || links.empty()) fail("chain.links", "expected a non-empty array");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string at = "chain.links[" + std::to_string(i) + "]";
    auto basis = word_array(links[i], at);
    chain.links.push_back(
        located(at, [&] { return Subspace::from_vectors(chain.pair_width, basis); }));
  }
  if (doc.contains("verified")) {
    const json& flags = doc.at("verified");
    if (!flags.is_array() || flags.size() + 1 != links.size())
      fail("chain.verified", "expected one flag per round");
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (!flags[i].is_boolean())
        fail("chain.verified[" + std::to_string(i) + "]", "expected a boolean");
      chain.link_verified.push_back(flags[i].get<bool>());
    }
  } else {
    chain.link_verified.assign(chain.links.size() - 1, false);
  }
  return chain;
}

namespace {

const char* family_name(SearchFamily family) {
  switch (family) {
    case SearchFamily::exhaustive: return "exhaustive";
    case SearchFamily::product: return "product";
    case SearchFamily::graph: return "graph";
    case SearchFamily::wall_lifted: return "wall_lifted";
  }
  throw std::logic_error("unnamed search family");
}

}  // namespace

json exclusion_to_json(const ExclusionReport& report) {
  json doc;
  doc["variant"] =
      report.variant == TheoremVariant::standard ? "standard" : "weak_uniformity";
  doc["best_delta"] = report.best_delta;
  doc["hypotheses_pass"] = report.hypotheses_pass;
  doc["rounds"] = json::array();
  for (const RoundHypotheses& round : report.rounds) {
    json item;
    item["composed"] = round.composed;
    item["fixes_zero"] = round.fixes_zero;
    item["strongly_proper"] = round.strongly_proper;
    item["boxes"] = json::array();
    for (const BoxHypotheses& box : round.boxes)
      item["boxes"].push_back({{"delta", box.delta},
                               {"apn", box.apn},
                               {"anti_order", box.anti_order},
                               {"delta_lo", box.delta_lo},
                               {"delta_hi", box.delta_hi}});
    doc["rounds"].push_back(std::move(item));
  }
  doc["families"] = json::array();
  for (SearchFamily family : report.families) doc["families"].push_back(family_name(family));
  doc["chains"] = json::array();
  for (const PartitionChain& chain : report.chains)
    doc["chains"].push_back(chain_to_json(chain));
  doc["verdicts"] = json::array();
  for (const ChainConditions& v : report.verdicts)
    doc["verdicts"].push_back({{"two_cycle_at", v.two_cycle_at},
                               {"products_at", v.products_at},
                               {"trivial_d_at", v.trivial_d_at},
                               {"trivial_a_at", v.trivial_a_at}});
  doc["pass"] = report.pass;
  return doc;
}

json attack_to_json(const AttackReport& report) {
  json doc;
  doc["seed"] = report.seed;
  doc["samples"] = report.samples;
  doc["hits"] = report.hits;
  doc["hit_rate"] = report.hit_rate;
  doc["baseline_expected"] = report.baseline_expected;
  doc["key_recovery_ran"] = report.key_recovery_ran;
  if (report.key_recovery_ran) {
    doc["recovered_rep"] = report.recovered_rep;
    doc["ambiguity_basis"] = report.ambiguity ? json(report.ambiguity->basis())
                                              : json(json::array());
    doc["bits_recovered"] = report.bits_recovered;
    doc["contains_true_key"] = report.contains_true_key;
  }
  return doc;
}

}  // namespace fpt
