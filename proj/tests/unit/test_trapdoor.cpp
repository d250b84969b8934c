#include "fpt/trapdoor.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fpt/goursat.hpp"
#include "fpt/partition.hpp"
#include "fpt/sbox.hpp"

using namespace fpt;

namespace {

std::vector<std::vector<Subspace>> link_sets(const std::vector<PartitionChain>& cs) {
  std::vector<std::vector<Subspace>> out;
  for (const auto& c : cs) out.push_back(c.links);
  std::sort(out.begin(), out.end());
  return out;
}

CipherSpec tiny_raw_spec() {
  // n = 2, two rounds of the same non-affine, non-bijective table
  const GeneratingFunction f = GeneratingFunction::from_table(2, {0, 1, 1, 3});
  return CipherSpec(BrickLayout(2, 1), {f, f});
}

}  // namespace

TEST_CASE("weak cipher carries a verified wall two-cycle") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42);
  REQUIRE(weak.chain.verified());
  REQUIRE(weak.chain.links.size() == 5);
  CHECK(weak.chain.pair_width == 12);
  CHECK(weak.spec.round_count() == 4);
  for (const auto& f : weak.spec.rounds) {
    CHECK(f.composed());
    CHECK(f.fixes_zero());
  }

  const Subspace wall0 = wall_subspace(weak.spec.layout, 0b01);
  const Subspace wall1 = wall_subspace(weak.spec.layout, 0b10);
  Subspace expected(12);
  for (word v : wall1.basis()) expected.insert(pack_pair(v, 0, 6));
  for (word v : wall0.basis()) expected.insert(pack_pair(0, v, 6));
  CHECK(weak.chain.links[0] == expected);
  for (std::size_t i = 0; i + 2 < weak.chain.links.size(); ++i)
    CHECK(weak.chain.links[i] == weak.chain.links[i + 2]);
  CHECK_FALSE(weak.chain.links[0] == weak.chain.links[1]);

  SUBCASE("same seed reproduces the cipher, another seed does not") {
    const WeakCipher again = build_weak_cipher(3, 2, 4, 42);
    for (int i = 0; i < 4; ++i)
      CHECK(again.spec.rounds[i].table() == weak.spec.rounds[i].table());
    const WeakCipher other = build_weak_cipher(3, 2, 4, 43);
    CHECK(other.spec.rounds[0].table() != weak.spec.rounds[0].table());
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(build_weak_cipher(3, 1, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_weak_cipher(2, 2, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_weak_cipher(3, 2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_weak_cipher(4, 2, 2, 1, true), std::invalid_argument);
  }
}

TEST_CASE("weak cipher variants") {
  SUBCASE("cube boxes") {
    const WeakCipher weak = build_weak_cipher(3, 2, 2, 0, true);
    REQUIRE(weak.chain.verified());
    for (const auto& f : weak.spec.rounds)
      for (const SBox& box : f.gamma().boxes) CHECK(box.table == cube_box().table);
  }
  SUBCASE("three bricks, odd round count") {
    const WeakCipher weak = build_weak_cipher(3, 3, 3, 5);
    REQUIRE(weak.chain.verified());
    CHECK(weak.chain.links.size() == 4);
    const ChainConditions v = check_chain_conditions(weak.spec, weak.chain);
    CHECK(v.two_cycle_at == 1);
    CHECK(v.products_at == 1);
    CHECK(v.trivial_d_at == 0);
    CHECK(v.trivial_a_at == 0);
  }
}

TEST_CASE("propagate_chain pushes a seed through every round") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42);
  const ChainSearchOutcome run = propagate_chain(weak.spec, weak.chain.links[0]);
  REQUIRE(run.chain.has_value());
  CHECK(run.chain->links == weak.chain.links);
  CHECK(run.chain->verified());
  CHECK(run.failed_round == 0);

  SUBCASE("a non-wall seed dies inside the chain") {
    Subspace seed(12);
    seed.insert(pack_pair(1, 0, 6));
    const ChainSearchOutcome bad = propagate_chain(weak.spec, seed);
    REQUIRE_FALSE(bad.chain.has_value());
    CHECK(bad.failed_round >= 1);
    CHECK(bad.failed_round <= 4);
  }
  SUBCASE("seed validation") {
    CHECK_THROWS_AS(propagate_chain(weak.spec, Subspace(6)), std::invalid_argument);
    CHECK_THROWS_AS(propagate_chain(weak.spec, Subspace(12)), std::invalid_argument);
    CHECK_THROWS_AS(propagate_chain(weak.spec, Subspace::full(12)),
                    std::invalid_argument);
  }
}

TEST_CASE("chain conditions flag the weak two-cycle") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 7);
  const ChainConditions v = check_chain_conditions(weak.spec, weak.chain);
  CHECK(v.two_cycle_at == 1);
  CHECK(v.products_at == 1);
  CHECK(v.trivial_d_at == 0);
  CHECK(v.trivial_a_at == 0);
  CHECK(v.any());

  SUBCASE("rejects chains that do not belong to the cipher") {
    PartitionChain wrong = weak.chain;
    wrong.links.pop_back();
    wrong.link_verified.pop_back();
    CHECK_THROWS_AS(check_chain_conditions(weak.spec, wrong), std::invalid_argument);
    PartitionChain tampered = weak.chain;
    tampered.links[2] = tampered.links[1];
    CHECK_THROWS_AS(check_chain_conditions(weak.spec, tampered),
                    std::invalid_argument);
  }
}

TEST_CASE("lift_partition builds the certified pair subgroups") {
  SUBCASE("identity generating function") {
    std::vector<word> id(8);
    std::iota(id.begin(), id.end(), 0);
    const GeneratingFunction f = GeneratingFunction::from_table(3, id);
    const Subspace u = Subspace::from_vectors(3, std::vector<word>{1, 2});
    const auto lifted = lift_partition(u, u, f);
    Subspace expected(6);
    for (word v : u.basis()) {
      expected.insert(pack_pair(v, 0, 3));
      expected.insert(pack_pair(0, v, 3));
    }
    CHECK(lifted.first == expected);
    CHECK(lifted.second == expected);
  }
  SUBCASE("weak first round lifts its wall pair onto the chain") {
    const WeakCipher weak = build_weak_cipher(3, 2, 3, 11);
    const Subspace wall0 = wall_subspace(weak.spec.layout, 0b01);
    const Subspace wall1 = wall_subspace(weak.spec.layout, 0b10);
    const auto lifted = lift_partition(wall0, wall1, weak.spec.rounds[0]);
    CHECK(lifted.first == weak.chain.links[0]);
    CHECK(lifted.second == weak.chain.links[1]);
    CHECK_THROWS_AS(lift_partition(wall0, wall0, weak.spec.rounds[0]),
                    std::invalid_argument);
  }
}

TEST_CASE("reduce_to_spn extracts SPN pairs from a two-cycle") {
  SUBCASE("weak cipher walls come back out of the D slices") {
    const WeakCipher weak = build_weak_cipher(3, 2, 2, 19);
    const Subspace wall0 = wall_subspace(weak.spec.layout, 0b01);
    const Subspace wall1 = wall_subspace(weak.spec.layout, 0b10);
    const SpnReduction red =
        reduce_to_spn(weak.spec.rounds[0], weak.spec.rounds[1], weak.chain.links[0],
                      weak.chain.links[1]);
    CHECK(red.from_d_slices);
    CHECK(red.u1 == wall0);
    CHECK(red.w1 == wall1);
    CHECK(red.u2 == wall1);
    CHECK(red.w2 == wall0);
  }
  SUBCASE("graph subgroups come back out of the A projections") {
    // rho depends on the high half only, so it is constant on S-cosets
    std::vector<word> table(16);
    const word g[4] = {0b0000, 0b0001, 0b0010, 0b0111};
    for (word x = 0; x < 16; ++x) table[x] = g[x >> 2];
    const GeneratingFunction f = GeneratingFunction::from_table(4, table);
    REQUIRE_FALSE(is_affine_table(f.table()));
    const Subspace s = Subspace::from_vectors(4, std::vector<word>{1, 2});
    Subspace diag(8);
    for (word v : s.basis()) diag.insert(pack_pair(v, v, 4));
    const SpnReduction red = reduce_to_spn(f, f, diag, diag);
    CHECK_FALSE(red.from_d_slices);
    CHECK(red.u1 == s);
    CHECK(red.w1 == s);
    CHECK(red.u2 == s);
    CHECK(red.w2 == s);

    // both Goursat D slices and one A projection are trivial here
    Subspace left(8);
    for (word v : s.basis()) left.insert(pack_pair(v, 0, 4));
    Subspace right(8);
    for (word v : s.basis()) right.insert(pack_pair(0, v, 4));
    CHECK_THROWS_AS(reduce_to_spn(f, f, left, right), std::invalid_argument);
  }
  SUBCASE("affine generating functions are rejected") {
    std::vector<word> id(8);
    std::iota(id.begin(), id.end(), 0);
    const GeneratingFunction f = GeneratingFunction::from_table(3, id);
    const Subspace u = Subspace::from_vectors(3, std::vector<word>{1, 2});
    const auto lifted = lift_partition(u, u, f);
    CHECK_THROWS_AS(reduce_to_spn(f, f, lifted.first, lifted.second),
                    std::invalid_argument);
  }
  SUBCASE("non-propagating pairs are rejected") {
    const WeakCipher weak = build_weak_cipher(3, 2, 2, 19);
    CHECK_THROWS_AS(reduce_to_spn(weak.spec.rounds[0], weak.spec.rounds[1],
                                  weak.chain.links[0], weak.chain.links[0]),
                    std::invalid_argument);
  }
}

TEST_CASE("exhaustive search agrees with a direct subgroup scan") {
  const CipherSpec spec = tiny_raw_spec();
  const std::vector<PartitionChain> found =
      search_trapdoor_chains(spec, SearchFamily::exhaustive);
  for (const auto& c : found) CHECK(c.verified());

  std::vector<std::vector<word>> tables;
  for (const auto& f : spec.rounds) tables.push_back(FeistelOperator(f).to_table());
  std::vector<std::vector<Subspace>> expected;
  for_each_subspace(4, [&](const Subspace& u) {
    if (!u.proper_nontrivial()) return;
    std::vector<Subspace> links{u};
    for (const auto& t : tables) {
      const auto img = propagate_linear(t, links.back());
      if (!img) return;
      links.push_back(*img);
    }
    expected.push_back(std::move(links));
  });
  std::sort(expected.begin(), expected.end());
  CHECK(link_sets(found) == expected);
  CHECK_FALSE(found.empty());
  CHECK_THROWS_AS(
      search_trapdoor_chains(strong_demo_spec(2), SearchFamily::exhaustive),
      std::invalid_argument);
}

TEST_CASE("product family equals the product-seeded slice of the full scan") {
  const CipherSpec spec = tiny_raw_spec();
  const std::vector<PartitionChain> all =
      search_trapdoor_chains(spec, SearchFamily::exhaustive);
  std::vector<PartitionChain> products;
  for (const auto& c : all)
    if (decompose(c.links[0], 2).is_product()) products.push_back(c);

  const std::vector<PartitionChain> found =
      search_trapdoor_chains(spec, SearchFamily::product);
  CHECK(link_sets(found) == link_sets(products));
  CHECK_FALSE(found.empty());

  // sharding across workers does not change the result
  const std::vector<PartitionChain> threaded =
      search_trapdoor_chains(spec, SearchFamily::product, 3);
  CHECK(link_sets(threaded) == link_sets(found));
}

TEST_CASE("graph family chains are diagonal seeds and appear in the full scan") {
  const CipherSpec spec = tiny_raw_spec();
  const auto all = link_sets(search_trapdoor_chains(spec, SearchFamily::exhaustive));
  const std::vector<PartitionChain> found =
      search_trapdoor_chains(spec, SearchFamily::graph);
  for (const auto& c : found) {
    CHECK(std::binary_search(all.begin(), all.end(), c.links));
    for (word v : c.links[0].elements()) CHECK(pair_lo(v, 2) == pair_hi(v, 2));
  }
  const std::vector<PartitionChain> threaded =
      search_trapdoor_chains(spec, SearchFamily::graph, 2);
  CHECK(link_sets(threaded) == link_sets(found));
}

TEST_CASE("wall-lifted search recovers the planted two-cycle") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42);
  const std::vector<PartitionChain> found =
      search_trapdoor_chains(weak.spec, SearchFamily::wall_lifted);
  REQUIRE_FALSE(found.empty());
  bool planted = false;
  for (const auto& c : found) {
    CHECK(c.verified());
    if (c.links == weak.chain.links) planted = true;
  }
  CHECK(planted);
}

TEST_CASE("searches come up empty on the strong demo cipher") {
  const CipherSpec spec = strong_demo_spec(4);
  CHECK(search_trapdoor_chains(spec, SearchFamily::wall_lifted).empty());
  CHECK(search_trapdoor_chains(spec, SearchFamily::graph, 4).empty());
  CHECK(search_trapdoor_chains(spec, SearchFamily::product, 4).empty());
}

TEST_CASE("exclusion report clears the strong demo cipher") {
  const CipherSpec spec = strong_demo_spec(3);
  const std::vector<SearchFamily> fams{SearchFamily::graph, SearchFamily::wall_lifted};
  const ExclusionReport rep =
      check_exclusion_theorem(spec, TheoremVariant::standard, fams, 2);
  CHECK(rep.hypotheses_pass);
  CHECK(rep.best_delta == 1);
  CHECK(rep.chains.empty());
  CHECK(rep.pass);
  REQUIRE(rep.rounds.size() == 3);
  for (const auto& rh : rep.rounds) {
    CHECK(rh.composed);
    CHECK(rh.fixes_zero);
    CHECK(rh.strongly_proper);
    REQUIRE(rh.boxes.size() == 2);
    for (const auto& bh : rh.boxes) {
      CHECK(bh.delta == 2);
      CHECK(bh.apn);
      CHECK(bh.anti_order == 1);
      CHECK(bh.delta_lo == 1);
      CHECK(bh.delta_hi == 2);
    }
  }
  const ExclusionReport weakrep =
      check_exclusion_theorem(spec, TheoremVariant::weak_uniformity, fams, 2);
  CHECK(weakrep.best_delta == 1);
  CHECK(weakrep.pass);
}

TEST_CASE("exclusion report flags the weak cipher") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42, true);
  const ExclusionReport rep = check_exclusion_theorem(
      weak.spec, TheoremVariant::standard, {SearchFamily::wall_lifted});
  CHECK_FALSE(rep.hypotheses_pass);  // rotation layer is not strongly proper
  for (const auto& rh : rep.rounds) {
    CHECK(rh.composed);
    CHECK(rh.fixes_zero);
    CHECK_FALSE(rh.strongly_proper);
    for (const auto& bh : rh.boxes) CHECK(bh.apn);
  }
  REQUIRE_FALSE(rep.chains.empty());
  REQUIRE(rep.verdicts.size() == rep.chains.size());
  bool planted = false;
  for (std::size_t i = 0; i < rep.chains.size(); ++i) {
    if (rep.chains[i].links == weak.chain.links) {
      planted = true;
      CHECK(rep.verdicts[i].two_cycle_at == 1);
      CHECK(rep.verdicts[i].products_at == 1);
    }
  }
  CHECK(planted);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("linear boxes leave no admissible uniformity exponent") {
  std::vector<word> id(8);
  std::iota(id.begin(), id.end(), 0);
  const BrickLayout layout(3, 2);
  const LinearMap mixer(6, {9, 18, 36, 17, 34, 28});
  const GeneratingFunction f(ParallelSBox(layout, {SBox(3, id), SBox(3, id)}), mixer);
  const CipherSpec spec(layout, {f, f});
  const ExclusionReport rep =
      check_exclusion_theorem(spec, TheoremVariant::standard, {});
  CHECK(rep.best_delta == 0);
  CHECK_FALSE(rep.hypotheses_pass);
  CHECK_FALSE(rep.pass);
  for (const auto& rh : rep.rounds)
    for (const auto& bh : rh.boxes) {
      CHECK(bh.delta == 8);
      CHECK_FALSE(bh.apn);
      CHECK(bh.delta_lo > bh.delta_hi);
    }
}

TEST_CASE("distinguisher separates the weak cipher from a random permutation") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42);
  const RoundKeys keys{0x2B, 0x07, 0x15, 0x31};
  const PairOracle cipher = [&](word p) { return encrypt(weak.spec, keys, p); };

  const AttackReport hot = distinguish(cipher, weak.chain, 400, 9);
  CHECK(hot.hits == 400);
  CHECK(hot.hit_rate == 1.0);
  CHECK(hot.baseline_expected == doctest::Approx(63.0 / 4095.0));

  std::vector<word> perm(1 << 12);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t state = 77;
  for (word i = static_cast<word>(perm.size()) - 1; i > 0; --i)
    std::swap(perm[i], perm[rand_below(state, i + 1)]);
  const PairOracle random = [&](word p) { return perm[p]; };
  const AttackReport cold = distinguish(random, weak.chain, 20000, 11);
  CHECK(cold.hit_rate ==
        doctest::Approx(cold.baseline_expected).epsilon(0.25));
  CHECK(cold.hit_rate < 0.05);

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(distinguish(cipher, weak.chain, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(distinguish(cipher, PartitionChain{}, 10, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("key recovery pins the last round key to a wall coset") {
  const WeakCipher weak = build_weak_cipher(3, 2, 4, 42);
  const RoundKeys keys{0x2B, 0x07, 0x15, 0x31};
  const AttackReport rep = recover_key_coset(weak.spec, keys, weak.chain, 3, 16);
  CHECK(rep.key_recovery_ran);
  CHECK(rep.samples == 16);
  REQUIRE(rep.ambiguity.has_value());
  CHECK(rep.ambiguity->dim() == 3);
  CHECK(rep.bits_recovered == 3);
  CHECK(rep.contains_true_key);
  CHECK(rep.recovered_rep == rep.ambiguity->reduce(keys.back()));

  SUBCASE("holds across hidden keys and seeds") {
    std::uint64_t state = 12345;
    for (int trial = 0; trial < 5; ++trial) {
      RoundKeys k(4);
      for (auto& v : k) v = rand_below(state, 64);
      const AttackReport r =
          recover_key_coset(weak.spec, k, weak.chain, 100 + trial, 16);
      CHECK(r.contains_true_key);
      CHECK(r.bits_recovered == 3);
      CHECK(r.recovered_rep == r.ambiguity->reduce(k.back()));
    }
  }
  SUBCASE("two rounds leave the same ambiguity") {
    const WeakCipher small = build_weak_cipher(3, 2, 2, 8);
    const RoundKeys k{0x0D, 0x3A};
    const AttackReport r = recover_key_coset(small.spec, k, small.chain, 5, 16);
    CHECK(r.contains_true_key);
    CHECK(r.bits_recovered == 3);
  }
  SUBCASE("a final link swallowing the right half recovers nothing") {
    // V x {0} maps onto {0} x V after one round of any cipher, and a final
    // link containing (0, k) makes every key class observationally equal
    const CipherSpec one(weak.spec.layout, {weak.spec.rounds[0]});
    Subspace left(12);
    for (int i = 0; i < 6; ++i) left.insert(pack_pair(word{1} << i, 0, 6));
    const ChainSearchOutcome run = propagate_chain(one, left);
    REQUIRE(run.chain.has_value());
    const AttackReport r = recover_key_coset(one, {0x17}, *run.chain, 2, 4);
    CHECK(r.bits_recovered == 0);
    CHECK(r.ambiguity->dim() == 6);
    CHECK(r.contains_true_key);
    CHECK(r.recovered_rep == 0);
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(recover_key_coset(weak.spec, {1, 2}, weak.chain, 1, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(recover_key_coset(weak.spec, keys, weak.chain, 1, 0),
                    std::invalid_argument);
    PartitionChain unverified = weak.chain;
    unverified.link_verified.assign(4, false);
    CHECK_THROWS_AS(recover_key_coset(weak.spec, keys, unverified, 1, 16),
                    std::invalid_argument);
    CipherSpec before(weak.spec.layout, weak.spec.rounds, KeyMode::before_rho);
    CHECK_THROWS_AS(recover_key_coset(before, keys, weak.chain, 1, 16),
                    std::invalid_argument);
  }
}
