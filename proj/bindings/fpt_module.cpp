// Python bindings for the core operations: subspaces and linear maps over
// GF(2), S-box metrics, Feistel specs, partition propagation, trapdoor chain
// searches, the exclusion report, the attack, and the group oracle.
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpt/difflayer.hpp"
#include "fpt/goursat.hpp"
#include "fpt/partition.hpp"
#include "fpt/permgroup.hpp"
#include "fpt/specfile.hpp"
#include "fpt/trapdoor.hpp"
#include "fpt/verify.hpp"

namespace py = pybind11;
using namespace fpt;

namespace {

std::string hex_basis(const Subspace& u) {
  std::string out;
  for (word v : u.basis()) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s0x%x", out.empty() ? "" : ", ", v);
    out += buf;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fpt, m) {
  m.doc() = "partition-trapdoor analysis for long-key Feistel networks";

  // --- GF(2) linear algebra ---
  py::class_<Subspace>(m, "Subspace")
      .def(py::init<int>(), py::arg("width"))
      .def_static("full", &Subspace::full, py::arg("width"))
      .def_static(
          "from_vectors",
          [](int width, const std::vector<word>& vectors) {
            return Subspace::from_vectors(width, vectors);
          },
          py::arg("width"), py::arg("vectors"))
      .def_property_readonly("width", &Subspace::width)
      .def_property_readonly("dim", &Subspace::dim)
      .def_property_readonly("basis",
                             [](const Subspace& u) { return u.basis(); })
      .def("insert", &Subspace::insert, py::arg("v"))
      .def("reduce", &Subspace::reduce, py::arg("v"))
      .def("contains", &Subspace::contains, py::arg("v"))
      .def("contains_subspace", &Subspace::contains_subspace)
      .def("sum", &Subspace::sum)
      .def("proper_nontrivial", &Subspace::proper_nontrivial)
      .def("elements", &Subspace::elements)
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__repr__", [](const Subspace& u) {
        return "Subspace(width=" + std::to_string(u.width()) + ", basis=[" +
               hex_basis(u) + "])";
      });

  py::class_<BrickLayout>(m, "BrickLayout")
      .def(py::init<int, int>(), py::arg("s"), py::arg("b"))
      .def_readonly("s", &BrickLayout::s)
      .def_readonly("b", &BrickLayout::b)
      .def_property_readonly("width", &BrickLayout::width)
      .def(py::self == py::self);

  py::class_<Wall>(m, "Wall")
      .def(py::init<const BrickLayout&, word>(), py::arg("layout"),
           py::arg("members"))
      .def_readonly("layout", &Wall::layout)
      .def_readonly("members", &Wall::members)
      .def(py::self == py::self);

  py::class_<LinearMap>(m, "LinearMap")
      .def(py::init<int, std::vector<word>>(), py::arg("width"), py::arg("rows"))
      .def_static("identity", &LinearMap::identity, py::arg("width"))
      .def_property_readonly("width", &LinearMap::width)
      .def_property_readonly("rows",
                             [](const LinearMap& l) { return l.rows(); })
      .def("apply", &LinearMap::apply, py::arg("x"))
      .def("rank", &LinearMap::rank)
      .def("invertible", &LinearMap::invertible)
      .def("inverse", &LinearMap::inverse)
      .def("compose", &LinearMap::compose)
      .def("to_table", &LinearMap::to_table)
      .def(py::self == py::self);

  m.def("wall_subspace",
        py::overload_cast<const BrickLayout&, word>(&wall_subspace),
        py::arg("layout"), py::arg("members"));
  m.def("as_wall", &as_wall, py::arg("layout"), py::arg("u"));
  m.def("galois_number", &galois_number, py::arg("n"));
  m.def("enumerate_subspaces", &enumerate_subspaces, py::arg("width"),
        py::arg("dims") = std::nullopt);
  m.def("pack_pair", &pack_pair, py::arg("x1"), py::arg("x2"), py::arg("n"));
  m.def("pair_lo", &pair_lo, py::arg("v"), py::arg("n"));
  m.def("pair_hi", &pair_hi, py::arg("v"), py::arg("n"));

  // --- S-box metrics ---
  py::class_<SBox>(m, "SBox")
      .def(py::init<int, std::vector<word>>(), py::arg("width"), py::arg("table"))
      .def_readonly("width", &SBox::width)
      .def_readonly("table", &SBox::table)
      .def("__call__", &SBox::operator(), py::arg("x"));

  py::class_<DDT>(m, "DDT")
      .def_readonly("width", &DDT::width)
      .def("at", &DDT::at, py::arg("a"), py::arg("b"));

  py::class_<UniformityReport>(m, "UniformityReport")
      .def_readonly("delta", &UniformityReport::delta)
      .def_readonly("apn", &UniformityReport::apn);

  py::class_<AntiInvarianceReport>(m, "AntiInvarianceReport")
      .def_readonly("order", &AntiInvarianceReport::order)
      .def_readonly("normalized", &AntiInvarianceReport::normalized);

  py::class_<ParallelSBox>(m, "ParallelSBox")
      .def(py::init<const BrickLayout&, std::vector<SBox>>(), py::arg("layout"),
           py::arg("boxes"))
      .def_readonly("layout", &ParallelSBox::layout)
      .def_readonly("boxes", &ParallelSBox::boxes)
      .def("apply", &ParallelSBox::apply, py::arg("x"))
      .def("to_table", &ParallelSBox::to_table);

  m.def("ddt", &ddt, py::arg("f"));
  m.def("differential_uniformity", &differential_uniformity, py::arg("f"));
  m.def("is_weakly_uniform", &is_weakly_uniform, py::arg("f"), py::arg("delta"));
  m.def("anti_invariance_order", &anti_invariance_order, py::arg("f"));
  m.def("cube_box", &cube_box);

  // --- diffusion layer ---
  py::class_<DiffusionReport>(m, "DiffusionReport")
      .def_readonly("proper", &DiffusionReport::proper)
      .def_readonly("strongly_proper", &DiffusionReport::strongly_proper)
      .def_readonly("invariant_wall", &DiffusionReport::invariant_wall)
      .def_readonly("wall_to_wall", &DiffusionReport::wall_to_wall);

  m.def("check_properness", &check_properness, py::arg("lambda_"),
        py::arg("layout"));
  m.def("image_of_subspace", &image_of_subspace, py::arg("lambda_"),
        py::arg("u"));

  // --- Feistel specs ---
  py::class_<GeneratingFunction>(m, "GeneratingFunction")
      .def(py::init<ParallelSBox, LinearMap>(), py::arg("gamma"),
           py::arg("lambda_"))
      .def_static("from_table", &GeneratingFunction::from_table,
                  py::arg("width"), py::arg("table"))
      .def_property_readonly("width", &GeneratingFunction::width)
      .def("apply", &GeneratingFunction::apply, py::arg("x"))
      .def("table", [](const GeneratingFunction& f) { return f.table(); })
      .def("fixes_zero", &GeneratingFunction::fixes_zero)
      .def("composed", &GeneratingFunction::composed)
      .def("gamma", &GeneratingFunction::gamma)
      .def("lambda_", &GeneratingFunction::lambda);

  py::class_<FeistelOperator>(m, "FeistelOperator")
      .def(py::init<GeneratingFunction>(), py::arg("rho"))
      .def_property_readonly("pair_width", &FeistelOperator::pair_width)
      .def("apply", &FeistelOperator::apply, py::arg("v"))
      .def("apply_inverse", &FeistelOperator::apply_inverse, py::arg("v"))
      .def("to_table", &FeistelOperator::to_table);

  py::enum_<KeyMode>(m, "KeyMode")
      .value("after_rho", KeyMode::after_rho)
      .value("before_rho", KeyMode::before_rho);

  py::class_<CipherSpec>(m, "CipherSpec")
      .def(py::init<BrickLayout, std::vector<GeneratingFunction>, KeyMode>(),
           py::arg("layout"), py::arg("rounds"),
           py::arg("key_mode") = KeyMode::after_rho)
      .def_readonly("layout", &CipherSpec::layout)
      .def_readonly("rounds", &CipherSpec::rounds)
      .def_readonly("key_mode", &CipherSpec::key_mode)
      .def_property_readonly("width", &CipherSpec::width)
      .def_property_readonly("round_count", &CipherSpec::round_count);

  m.def(
      "encrypt",
      [](const CipherSpec& spec, const std::vector<word>& keys, word p) {
        return encrypt(spec, keys, p);
      },
      py::arg("spec"), py::arg("keys"), py::arg("p"));
  m.def(
      "decrypt",
      [](const CipherSpec& spec, const std::vector<word>& keys, word c) {
        return decrypt(spec, keys, c);
      },
      py::arg("spec"), py::arg("keys"), py::arg("c"));

  py::class_<WitnessLetter>(m, "WitnessLetter")
      .def_readonly("keys", &WitnessLetter::keys)
      .def_readonly("inverse", &WitnessLetter::inverse);

  m.def("translation_witness", &translation_witness, py::arg("spec"),
        py::arg("h"), py::arg("k"));
  m.def(
      "apply_letters",
      [](const CipherSpec& spec, const std::vector<WitnessLetter>& letters,
         word v) { return apply_letters(spec, letters, v); },
      py::arg("spec"), py::arg("letters"), py::arg("v"));

  // --- partitions and Goursat ---
  py::class_<GenericPartition>(m, "GenericPartition")
      .def(py::init<int, std::vector<int>>(), py::arg("width"),
           py::arg("block_of"))
      .def_static("from_blocks", &GenericPartition::from_blocks,
                  py::arg("width"), py::arg("blocks"))
      .def_property_readonly("width", &GenericPartition::width)
      .def_property_readonly("block_count", &GenericPartition::block_count)
      .def("block_id", &GenericPartition::block_id, py::arg("v"))
      .def("blocks", &GenericPartition::blocks)
      .def(py::self == py::self);

  m.def("linear_partition", &linear_partition, py::arg("u"));
  m.def("as_linear", &as_linear, py::arg("p"));
  m.def(
      "maps_partition",
      [](const std::vector<word>& f, const GenericPartition& a,
         const GenericPartition& b) { return maps_partition(f, a, b); },
      py::arg("f"), py::arg("a"), py::arg("b"));
  m.def("translation_criterion", &translation_criterion, py::arg("a"),
        py::arg("b"));
  m.def(
      "propagate_linear",
      [](const std::vector<word>& f, const Subspace& u) {
        return propagate_linear(f, u);
      },
      py::arg("f"), py::arg("u"));
  m.def(
      "search_propagating_pairs",
      [](const std::vector<word>& f, int width,
         std::optional<std::vector<int>> dims, int jobs) {
        return search_propagating_pairs(f, width, std::move(dims), jobs);
      },
      py::arg("f"), py::arg("width"), py::arg("dims") = std::nullopt,
      py::arg("jobs") = 1);

  py::class_<GoursatTriple>(m, "GoursatTriple")
      .def_readonly("width", &GoursatTriple::width)
      .def_readonly("a", &GoursatTriple::a)
      .def_readonly("b", &GoursatTriple::b)
      .def_readonly("c", &GoursatTriple::c)
      .def_readonly("d", &GoursatTriple::d)
      .def_readonly("phi", &GoursatTriple::phi)
      .def("apply_phi", &GoursatTriple::apply_phi, py::arg("x"))
      .def("kernel_phi", &GoursatTriple::kernel_phi)
      .def("image_phi", &GoursatTriple::image_phi)
      .def("is_product", &GoursatTriple::is_product);

  m.def("decompose", &decompose, py::arg("u"), py::arg("n"));
  m.def("subgroup_from_triple", &subgroup_from_triple, py::arg("t"));
  m.def(
      "feistel_point",
      [](const std::vector<word>& rho, word v, int n) {
        return feistel_point(rho, v, n);
      },
      py::arg("rho"), py::arg("v"), py::arg("n"));
  m.def(
      "check_propagation_conditions",
      [](const std::vector<word>& rho, const Subspace& u1, const Subspace& u2,
         int n) { return check_propagation_conditions(rho, u1, u2, n); },
      py::arg("rho"), py::arg("u1"), py::arg("u2"), py::arg("n"));

  py::class_<PropagationConditions>(m, "PropagationConditions")
      .def_readonly("c1", &PropagationConditions::c1)
      .def_readonly("c2", &PropagationConditions::c2)
      .def_readonly("c3", &PropagationConditions::c3)
      .def_readonly("c4", &PropagationConditions::c4)
      .def_readonly("clause_i_applies", &PropagationConditions::clause_i_applies)
      .def_readonly("clause_i", &PropagationConditions::clause_i)
      .def_readonly("clause_ii_applies",
                    &PropagationConditions::clause_ii_applies)
      .def_readonly("clause_ii", &PropagationConditions::clause_ii)
      .def("all", &PropagationConditions::all);

  // --- trapdoor chains, exclusion, attack ---
  py::class_<PartitionChain>(m, "PartitionChain")
      .def_readonly("pair_width", &PartitionChain::pair_width)
      .def_readonly("links", &PartitionChain::links)
      .def_readonly("link_verified", &PartitionChain::link_verified)
      .def("verified", &PartitionChain::verified);

  py::class_<ChainSearchOutcome>(m, "ChainSearchOutcome")
      .def_readonly("chain", &ChainSearchOutcome::chain)
      .def_readonly("failed_round", &ChainSearchOutcome::failed_round);

  py::class_<SpnReduction>(m, "SpnReduction")
      .def_readonly("u1", &SpnReduction::u1)
      .def_readonly("w1", &SpnReduction::w1)
      .def_readonly("u2", &SpnReduction::u2)
      .def_readonly("w2", &SpnReduction::w2)
      .def_readonly("from_d_slices", &SpnReduction::from_d_slices);

  py::enum_<SearchFamily>(m, "SearchFamily")
      .value("exhaustive", SearchFamily::exhaustive)
      .value("product", SearchFamily::product)
      .value("graph", SearchFamily::graph)
      .value("wall_lifted", SearchFamily::wall_lifted);

  py::enum_<TheoremVariant>(m, "TheoremVariant")
      .value("standard", TheoremVariant::standard)
      .value("weak_uniformity", TheoremVariant::weak_uniformity);

  py::class_<BoxHypotheses>(m, "BoxHypotheses")
      .def_readonly("delta", &BoxHypotheses::delta)
      .def_readonly("apn", &BoxHypotheses::apn)
      .def_readonly("anti_order", &BoxHypotheses::anti_order)
      .def_readonly("delta_lo", &BoxHypotheses::delta_lo)
      .def_readonly("delta_hi", &BoxHypotheses::delta_hi);

  py::class_<RoundHypotheses>(m, "RoundHypotheses")
      .def_readonly("composed", &RoundHypotheses::composed)
      .def_readonly("fixes_zero", &RoundHypotheses::fixes_zero)
      .def_readonly("strongly_proper", &RoundHypotheses::strongly_proper)
      .def_readonly("boxes", &RoundHypotheses::boxes);

  py::class_<ChainConditions>(m, "ChainConditions")
      .def_readonly("two_cycle_at", &ChainConditions::two_cycle_at)
      .def_readonly("products_at", &ChainConditions::products_at)
      .def_readonly("trivial_d_at", &ChainConditions::trivial_d_at)
      .def_readonly("trivial_a_at", &ChainConditions::trivial_a_at)
      .def("any", &ChainConditions::any);

  py::class_<ExclusionReport>(m, "ExclusionReport")
      .def_readonly("variant", &ExclusionReport::variant)
      .def_readonly("rounds", &ExclusionReport::rounds)
      .def_readonly("best_delta", &ExclusionReport::best_delta)
      .def_readonly("hypotheses_pass", &ExclusionReport::hypotheses_pass)
      .def_readonly("families", &ExclusionReport::families)
      .def_readonly("chains", &ExclusionReport::chains)
      .def_readonly("verdicts", &ExclusionReport::verdicts)
      .def_readonly("passed", &ExclusionReport::pass);

  py::class_<WeakCipher>(m, "WeakCipher")
      .def_readonly("spec", &WeakCipher::spec)
      .def_readonly("chain", &WeakCipher::chain);

  py::class_<AttackReport>(m, "AttackReport")
      .def_readonly("seed", &AttackReport::seed)
      .def_readonly("samples", &AttackReport::samples)
      .def_readonly("hits", &AttackReport::hits)
      .def_readonly("hit_rate", &AttackReport::hit_rate)
      .def_readonly("baseline_expected", &AttackReport::baseline_expected)
      .def_readonly("key_recovery_ran", &AttackReport::key_recovery_ran)
      .def_readonly("ambiguity", &AttackReport::ambiguity)
      .def_readonly("recovered_rep", &AttackReport::recovered_rep)
      .def_readonly("bits_recovered", &AttackReport::bits_recovered)
      .def_readonly("contains_true_key", &AttackReport::contains_true_key);

  m.def("propagate_chain", &propagate_chain, py::arg("spec"), py::arg("u1"));
  m.def("lift_partition", &lift_partition, py::arg("u1"), py::arg("u2"),
        py::arg("rho"));
  m.def("reduce_to_spn", &reduce_to_spn, py::arg("rho1"), py::arg("rho2"),
        py::arg("us1"), py::arg("us2"));
  m.def("search_trapdoor_chains", &search_trapdoor_chains, py::arg("spec"),
        py::arg("family"), py::arg("jobs") = 1);
  m.def("check_chain_conditions", &check_chain_conditions, py::arg("spec"),
        py::arg("chain"));
  m.def("check_exclusion_theorem", &check_exclusion_theorem, py::arg("spec"),
        py::arg("variant"), py::arg("families"), py::arg("jobs") = 1);
  m.def("build_weak_cipher", &build_weak_cipher, py::arg("s"), py::arg("b"),
        py::arg("r"), py::arg("seed"), py::arg("apn_boxes") = false);
  m.def("strong_demo_spec", &strong_demo_spec, py::arg("rounds") = 4);
  m.def("distinguish", &distinguish, py::arg("oracle"), py::arg("chain"),
        py::arg("samples"), py::arg("seed"));
  m.def(
      "recover_key_coset",
      [](const CipherSpec& spec, const std::vector<word>& keys_hidden,
         const PartitionChain& chain, std::uint64_t seed, int plaintext_labels) {
        return recover_key_coset(spec, keys_hidden, chain, seed,
                                 plaintext_labels);
      },
      py::arg("spec"), py::arg("keys_hidden"), py::arg("chain"),
      py::arg("seed") = 1, py::arg("plaintext_labels") = 16);

  // --- group oracle ---
  py::class_<StabilizerChain>(m, "StabilizerChain")
      .def(py::init<std::vector<PermWord>>(), py::arg("generators"))
      .def_property_readonly("degree", &StabilizerChain::degree)
      .def("order", [](const StabilizerChain& c) { return c.order().str(); })
      .def("contains", &StabilizerChain::contains, py::arg("g"));

  py::class_<BlockSystem>(m, "BlockSystem")
      .def_readonly("blocks", &BlockSystem::blocks)
      .def("trivial", &BlockSystem::trivial);

  m.def("group_order", [](const std::vector<PermWord>& generators) {
    return group_order(generators).str();
  });
  m.def("orbit_of", &orbit_of, py::arg("generators"), py::arg("start"));
  m.def("minimal_blocks", &minimal_blocks, py::arg("generators"), py::arg("a"),
        py::arg("b"));
  m.def("is_imprimitive", &is_imprimitive, py::arg("generators"));

  // --- structured reports and files ---
  m.def("load_spec", &load_spec, py::arg("path"));
  m.def("load_sbox", &load_sbox, py::arg("path"));
  m.def("spec_to_json", [](const CipherSpec& spec) {
    return spec_to_json(spec).dump(2);
  });
  m.def("spec_from_json", [](const std::string& text) {
    return spec_from_json(json::parse(text));
  });
  m.def("chain_to_json", [](const PartitionChain& chain) {
    return chain_to_json(chain).dump(2);
  });
  m.def("chain_from_json", [](const std::string& text) {
    return chain_from_json(json::parse(text));
  });
  m.def("exclusion_to_json", [](const ExclusionReport& report) {
    return exclusion_to_json(report).dump(2);
  });
  m.def("attack_to_json", [](const AttackReport& report) {
    return attack_to_json(report).dump(2);
  });

  // --- verification suites ---
  py::class_<VerifyCheck>(m, "VerifyCheck")
      .def_readonly("label", &VerifyCheck::label)
      .def_readonly("passed", &VerifyCheck::passed)
      .def_readonly("total", &VerifyCheck::total)
      .def("ok", &VerifyCheck::ok);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("checks", &VerifyReport::checks)
      .def("ok", &VerifyReport::ok);

  m.def("run_verify", &run_verify, py::arg("scope"), py::arg("seed") = 1);
}
