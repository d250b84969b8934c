#include "fpt/goursat.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fpt/bitvec.hpp"
#include "fpt/sbox.hpp"

using namespace fpt;

namespace {

// Span of the pointwise Feistel image; equals the image set exactly when the
// dimensions match (the operator is injective, so 2^dim distinct points inside
// a 2^dim subspace fill it).
Subspace feistel_image_span(std::span<const word> rho, const Subspace& u, int n) {
  Subspace s(2 * n);
  for (word v : u.elements()) s.insert(feistel_point(rho, v, n));
  return s;
}

Subspace random_subspace(std::uint64_t& state, int width, int max_gens) {
  Subspace s(width);
  const int gens = static_cast<int>(rand_below(state, static_cast<word>(max_gens + 1)));
  for (int i = 0; i < gens; ++i)
    s.insert(rand_below(state, word{1} << width));
  return s;
}

}  // namespace

TEST_CASE("pair packing round-trips and validates") {
  CHECK(pack_pair(0b101, 0b011, 3) == 0b011101);
  CHECK(pair_lo(0b011101, 3) == 0b101);
  CHECK(pair_hi(0b011101, 3) == 0b011);
  CHECK_THROWS_AS(pack_pair(0b1000, 0, 3), std::invalid_argument);
  for (word v = 0; v < 64; ++v)
    CHECK(pack_pair(pair_lo(v, 3), pair_hi(v, 3), 3) == v);
}

TEST_CASE("decompose reads off the four factors") {
  const int n = 2;
  SUBCASE("V x {0}") {
    Subspace u(2 * n);
    u.insert(pack_pair(0b01, 0, n));
    u.insert(pack_pair(0b10, 0, n));
    const GoursatTriple t = decompose(u, n);
    CHECK(t.a.is_full());
    CHECK(t.b.is_full());
    CHECK(t.c.is_trivial());
    CHECK(t.d.is_trivial());
    CHECK(t.phi == std::vector<word>{0, 0});
    CHECK(subgroup_from_triple(t) == u);
  }
  SUBCASE("diagonal") {
    Subspace u(2 * n);
    u.insert(pack_pair(0b01, 0b01, n));
    u.insert(pack_pair(0b10, 0b10, n));
    const GoursatTriple t = decompose(u, n);
    CHECK(t.a.is_full());
    CHECK(t.b.is_trivial());
    CHECK(t.c.is_full());
    CHECK(t.d.is_trivial());
    for (std::size_t i = 0; i < t.phi.size(); ++i) CHECK(t.phi[i] == t.a.basis()[i]);
    CHECK(subgroup_from_triple(t) == u);
  }
  SUBCASE("{0} x D") {
    Subspace u(2 * n);
    u.insert(pack_pair(0, 0b11, n));
    const GoursatTriple t = decompose(u, n);
    CHECK(t.a.is_trivial());
    CHECK(t.b.is_trivial());
    CHECK(t.c.dim() == 1);
    CHECK(t.d == t.c);
    CHECK(subgroup_from_triple(t) == u);
  }
}

TEST_CASE("round trip over every subgroup of (F2)^2 x (F2)^2") {
  const auto all = enumerate_subspaces(4);
  REQUIRE(all.size() == 67);
  for (const Subspace& u : all) {
    const GoursatTriple t = decompose(u, 2);
    CHECK_NOTHROW(t.validate());
    CHECK(t.a.dim() + t.d.dim() == u.dim());
    CHECK(subgroup_from_triple(t) == u);
  }
}

TEST_CASE("round trip on random width-8 subgroups") {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int trial = 0; trial < 1000; ++trial) {
    const Subspace u = random_subspace(state, 8, 6);
    const GoursatTriple t = decompose(u, 4);
    CHECK_NOTHROW(t.validate());
    CHECK(t.a.dim() + t.d.dim() == u.dim());
    CHECK(subgroup_from_triple(t) == u);
  }
}

TEST_CASE("phi evaluation, kernel and image") {
  const int n = 3;
  // U = {(a, phi(a)) : a in span{e1,e2}} with phi(e1) = e1, phi(e2) = e1.
  Subspace u(2 * n);
  u.insert(pack_pair(0b001, 0b001, n));
  u.insert(pack_pair(0b010, 0b001, n));
  const GoursatTriple t = decompose(u, n);
  CHECK(t.apply_phi(0b001) == 0b001);
  CHECK(t.apply_phi(0b010) == 0b001);
  CHECK(t.apply_phi(0b011) == 0);
  CHECK_THROWS_AS(t.apply_phi(0b100), std::invalid_argument);
  CHECK(t.kernel_phi() == Subspace::from_vectors(n, std::vector<word>{0b011}));
  CHECK(t.kernel_phi() == t.b);
  CHECK(t.image_phi() == Subspace::from_vectors(n, std::vector<word>{0b001}));
}

TEST_CASE("validate rejects malformed triples") {
  const int n = 2;
  const Subspace full = Subspace::full(n);
  const Subspace zero(n);
  // B not inside A
  CHECK_THROWS_AS(subgroup_from_triple(GoursatTriple(
                      n, Subspace::from_vectors(n, std::vector<word>{0b01}), full, zero,
                      zero, std::vector<word>{0})),
                  std::invalid_argument);
  // quotient dimensions disagree
  CHECK_THROWS_AS(subgroup_from_triple(
                      GoursatTriple(n, full, zero, zero, zero, std::vector<word>{0, 0})),
                  std::invalid_argument);
  // phi image not reduced modulo D
  CHECK_THROWS_AS(
      subgroup_from_triple(GoursatTriple(n, Subspace::from_vectors(n, std::vector<word>{0b01}),
                                         zero, full, full, std::vector<word>{0b01})),
      std::invalid_argument);
  // phi size mismatch is caught at construction
  CHECK_THROWS_AS(GoursatTriple(n, full, full, zero, zero, std::vector<word>{0}),
                  std::invalid_argument);
}

TEST_CASE("propagation conditions on product subgroups") {
  const int n = 3;
  const SBox cube = cube_box();
  Subspace u1(2 * n);
  for (int i = 0; i < n; ++i) u1.insert(pack_pair(word{1} << i, 0, n));
  const Subspace u2 = feistel_image_span(cube.table, u1, n);
  // (a, 0) -> (0, a), so the image is {0} x V.
  CHECK(u2 == feistel_image_span(cube.table, u1, n));
  const PropagationConditions r = check_propagation_conditions(cube.table, u1, u2, n);
  CHECK(r.all());
  CHECK(r.clause_ii_applies);
  CHECK(r.clause_ii);
  CHECK_FALSE(r.clause_i_applies);
}

TEST_CASE("propagation conditions on the diagonal under a linear map") {
  const int n = 3;
  const LinearMap m(n, {0b011, 0b010, 0b100});
  REQUIRE(m.invertible());
  const std::vector<word> rho = m.to_table();
  Subspace u1(2 * n);
  for (int i = 0; i < n; ++i) u1.insert(pack_pair(word{1} << i, word{1} << i, n));
  const Subspace u2 = feistel_image_span(rho, u1, n);
  REQUIRE(u2.dim() == u1.dim());
  const PropagationConditions r = check_propagation_conditions(rho, u1, u2, n);
  CHECK(r.all());
  CHECK(r.clause_i_applies);
  CHECK(r.clause_i);
}

TEST_CASE("propagation preconditions are enforced") {
  const int n = 3;
  const SBox cube = cube_box();
  Subspace u1(2 * n);
  u1.insert(pack_pair(0b001, 0b010, n));
  u1.insert(pack_pair(0b010, 0b100, n));
  const Subspace span = feistel_image_span(cube.table, u1, n);
  if (span.dim() != u1.dim()) {
    CHECK_THROWS_AS(check_propagation_conditions(cube.table, u1, span, n),
                    std::invalid_argument);
  }
  // wrong subgroup entirely
  Subspace other(2 * n);
  other.insert(pack_pair(0b111, 0b111, n));
  CHECK_THROWS_AS(check_propagation_conditions(cube.table, u1, other, n),
                  std::invalid_argument);
  // rho must fix 0
  std::vector<word> shifted(cube.table);
  for (word& y : shifted) y ^= 1u;
  CHECK_THROWS_AS(check_propagation_conditions(shifted, u1, span, n),
                  std::invalid_argument);
}

TEST_CASE("exhaustive propagation scan confirms the four conditions") {
  // n = 2 with a nonlinear non-bijective table (no nonlinear permutation of
  // (F2)^2 fixes 0), and n = 3 with the cube permutation.
  SUBCASE("n = 2, raw table") {
    const int n = 2;
    const std::vector<word> rho{0, 1, 1, 3};
    REQUIRE_FALSE(is_affine_table(rho));
    int pairs = 0;
    for (const Subspace& u : enumerate_subspaces(2 * n)) {
      const Subspace img = feistel_image_span(rho, u, n);
      if (img.dim() != u.dim()) continue;
      bool onto = true;
      for (word v : u.elements())
        if (!img.contains(feistel_point(rho, v, n))) onto = false;
      REQUIRE(onto);
      ++pairs;
      const PropagationConditions r = check_propagation_conditions(rho, u, img, n);
      CHECK(r.all());
      if (r.clause_i_applies) CHECK(r.clause_i);
      if (r.clause_ii_applies) CHECK(r.clause_ii);
    }
    CHECK(pairs > 10);
  }
  SUBCASE("n = 3, cube permutation") {
    const int n = 3;
    const std::vector<word> rho = cube_box().table;
    int pairs = 0;
    for (const Subspace& u : enumerate_subspaces(2 * n)) {
      const Subspace img = feistel_image_span(rho, u, n);
      if (img.dim() != u.dim()) continue;
      ++pairs;
      const PropagationConditions r = check_propagation_conditions(rho, u, img, n);
      CHECK(r.all());
      if (r.clause_i_applies) CHECK(r.clause_i);
      if (r.clause_ii_applies) CHECK(r.clause_ii);
    }
    CHECK(pairs > 20);
  }
}

TEST_CASE("triple enumeration streams every subgroup exactly once") {
  const int n = 2;
  std::vector<Subspace> produced;
  for_each_triple(n, {}, [&](const GoursatTriple& t) {
    CHECK_NOTHROW(t.validate());
    produced.push_back(subgroup_from_triple(t));
  });
  CHECK(produced.size() == 67);
  std::sort(produced.begin(), produced.end());
  CHECK(std::adjacent_find(produced.begin(), produced.end()) == produced.end());
  const auto all = enumerate_subspaces(2 * n);
  std::vector<Subspace> expected(all.begin(), all.end());
  std::sort(expected.begin(), expected.end());
  CHECK(produced == expected);
}

TEST_CASE("triple enumeration respects dimension constraints") {
  const int n = 2;
  SUBCASE("graphs of linear maps") {
    TripleConstraints tc;
    tc.a_dim_lo = tc.a_dim_hi = n;
    tc.d_dim_hi = 0;
    int count = 0;
    for_each_triple(n, tc, [&](const GoursatTriple& t) {
      CHECK(t.a.is_full());
      CHECK(t.d.is_trivial());
      ++count;
    });
    // one graph subgroup per linear map on (F2)^2
    CHECK(count == 16);
  }
  SUBCASE("left factor trivial") {
    TripleConstraints tc;
    tc.a_dim_hi = 0;
    int count = 0;
    for_each_triple(n, tc, [&](const GoursatTriple& t) {
      CHECK(t.a.is_trivial());
      ++count;
    });
    CHECK(count == galois_number(n));
  }
  SUBCASE("exact_a and d_within prune the stream") {
    TripleConstraints tc;
    tc.exact_a = Subspace::from_vectors(n, std::vector<word>{0b01});
    tc.d_within = Subspace::from_vectors(n, std::vector<word>{0b10});
    std::vector<Subspace> got;
    for_each_triple(n, tc, [&](const GoursatTriple& t) {
      CHECK(t.a == *tc.exact_a);
      CHECK(tc.d_within->contains_subspace(t.d));
      got.push_back(subgroup_from_triple(t));
    });
    std::vector<Subspace> expected;
    for (const Subspace& u : enumerate_subspaces(2 * n)) {
      const GoursatTriple t = decompose(u, n);
      if (t.a == *tc.exact_a && tc.d_within->contains_subspace(t.d))
        expected.push_back(u);
    }
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
}

TEST_CASE("triple enumeration bounds") {
  CHECK_THROWS_AS(for_each_triple(7, {}, [](const GoursatTriple&) {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(for_each_triple(5, {}, [](const GoursatTriple&) {}),
                  std::invalid_argument);
  // constrained n = 5 is allowed
  TripleConstraints tc;
  tc.a_dim_hi = 0;
  tc.d_dim_hi = 1;
  int count = 0;
  for_each_triple(5, tc, [&](const GoursatTriple&) { ++count; });
  CHECK(count == 32);  // {0} and the 31 lines
}
