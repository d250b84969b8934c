// S-box difference metrics: DDT, differential uniformity, weak uniformity,
// strong anti-invariance, and brick-parallel application.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpt/bitvec.hpp"

namespace fpt {

// Permutation of GF(2)^width given by its lookup table.
struct SBox {
  int width = 0;
  std::vector<word> table;

  SBox() = default;
  SBox(int width_, std::vector<word> table_);  // validates a permutation of size 2^width
  word operator()(word x) const { return table[x]; }
};

// Difference distribution table: at(a,b) = #{x : f(x) + f(x+a) = b}.
struct DDT {
  int width = 0;
  std::vector<std::uint32_t> counts;  // 2^width by 2^width, row-major

  std::uint32_t at(word a, word b) const {
    return counts[(std::size_t(a) << width) | b];
  }
};

DDT ddt(const SBox& f);

struct UniformityReport {
  int delta = 0;  // max DDT entry over a != 0
  bool apn = false;
};

UniformityReport differential_uniformity(const SBox& f);

// Weak delta-uniformity: every nonzero derivative image has size > 2^(s-1)/delta.
// The comparison is exact rational: |image| * delta > 2^(s-1).
bool is_weakly_uniform(const SBox& f, int delta);

struct AntiInvarianceReport {
  int order = 0;        // largest delta in [1, s-1] with strong delta-anti-invariance, 0 if none
  bool normalized = false;  // true if f(0) != 0 and x -> f(x)+f(0) was analyzed instead
};

// order = s-1-m where m is the largest dimension of a proper non-trivial
// subspace whose image under f is again a subspace (s-1 when there is none).
AntiInvarianceReport anti_invariance_order(const SBox& f);

// Parallel S-box layer: box j acts on brick j.
struct ParallelSBox {
  BrickLayout layout;
  std::vector<SBox> boxes;

  ParallelSBox() = default;
  ParallelSBox(const BrickLayout& layout_, std::vector<SBox> boxes_);
  word apply(word x) const;
  std::vector<word> to_table() const;
};

word parallel_apply(const ParallelSBox& gamma, word x);

// x^3 in F_{2^3} (reduction by x^3 + x + 1): the standard 3-bit APN permutation.
SBox cube_box();

}  // namespace fpt
