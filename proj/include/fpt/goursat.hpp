// Goursat data for subgroups of V x V: triples (A,B,C,D,phi), decomposition,
// recomposition, the propagation conditions, and constrained enumeration.
#pragma once

#include <climits>
#include <functional>
#include <optional>
#include <span>

#include "fpt/bitvec.hpp"

namespace fpt {

// A subgroup of V x V is a subspace of width 2n; the first factor sits in the
// low n bits.
using PairSubgroup = Subspace;

word pack_pair(word x1, word x2, int n);
word pair_lo(word v, int n);
word pair_hi(word v, int n);

// Goursat triple: A = first projection, B = {a : (a,0)}, C = second
// projection, D = {c : (0,c)}, and phi : A -> C/D represented by canonical
// coset representatives of the images of A's basis vectors.
struct GoursatTriple {
  int width = 0;  // n
  Subspace a, b, c, d;
  std::vector<word> phi;  // phi[i] pairs with a.basis()[i], already reduced mod d

  GoursatTriple(int n, Subspace a_, Subspace b_, Subspace c_, Subspace d_,
                std::vector<word> phi_);

  word apply_phi(word x) const;  // x must lie in A
  Subspace kernel_phi() const;   // {x in A : phi(x) = 0} (not modulo D)
  Subspace image_phi() const;
  bool is_product() const { return c == d; }
  void validate() const;  // throws on a malformed triple
};

PairSubgroup subgroup_from_triple(const GoursatTriple& t);
GoursatTriple decompose(const PairSubgroup& u, int n);

// Image of a pair under the Feistel operator of rho: (x1,x2) -> (x2, x1+rho(x2)).
word feistel_point(std::span<const word> rho, word v, int n);

struct PropagationConditions {
  bool c1 = false;  // Ker phi1 <= D2
  bool c2 = false;  // D2 <= A1
  bool c3 = false;  // A2 = A1 phi1 + D1
  bool c4 = false;  // D2 phi1 <= D1
  bool clause_i_applies = false;   // D1 and D2 trivial
  bool clause_i = false;           // rho linear on A2
  bool clause_ii_applies = false;  // both subgroups are products
  bool clause_ii = false;          // D1 = A2 and D2 = A1
  bool all() const { return c1 && c2 && c3 && c4; }
};

// Requires rho(0) = 0 and that the Feistel operator carries U1 onto U2.
PropagationConditions check_propagation_conditions(std::span<const word> rho,
                                                   const PairSubgroup& u1,
                                                   const PairSubgroup& u2, int n);

struct TripleConstraints {
  int a_dim_lo = 0, a_dim_hi = INT_MAX;
  int d_dim_lo = 0, d_dim_hi = INT_MAX;
  // propagation pruning hooks: fix A outright and/or bound D from above
  std::optional<Subspace> exact_a;
  std::optional<Subspace> d_within;
};

// Every subgroup of V x V matching the constraints, exactly once, streamed as
// its triple. Unconstrained enumeration is cut off above n = 4.
void for_each_triple(int n, const TripleConstraints& tc,
                     const std::function<void(const GoursatTriple&)>& fn);

}  // namespace fpt
