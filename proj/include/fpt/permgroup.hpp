// Micro-scale permutation-group oracle: exact group order via a stabilizer
// chain, membership sifting, orbits, and minimal block systems.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpt/bitvec.hpp"

namespace fpt {

// Permutation of {0,...,N-1} as an image array, x -> g[x].
using PermWord = std::vector<word>;

inline constexpr int kMaxPoints = 4096;
inline constexpr std::size_t kMaxGenerators = std::size_t{1} << 16;

// Non-negative integer of unbounded size; only what exact orders need.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v);

  BigUint& operator*=(std::uint32_t m);
  bool operator==(const BigUint&) const = default;
  std::string str() const;

 private:
  std::vector<std::uint32_t> limbs_{0};  // base 10^9, least significant first
};

// Deterministic Schreier-Sims stabilizer chain over the generated group.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::vector<PermWord> generators);

  int degree() const { return degree_; }
  BigUint order() const;
  bool contains(const PermWord& g) const;

 private:
  struct Level {
    word beta = 0;
    std::vector<PermWord> gens;       // strong generators fixing earlier betas
    std::vector<PermWord> gen_invs;
    std::vector<word> orbit;          // discovery order, orbit[0] == beta
    std::vector<PermWord> reps;       // transversal indexed by point, beta -> point
    std::vector<PermWord> rep_invs;
  };

  void rebuild_orbit(Level& level) const;
  std::pair<PermWord, std::size_t> strip(PermWord g, std::size_t from) const;
  void add_strong_generator(const PermWord& g, std::size_t lo, std::size_t hi);
  void complete_level(std::size_t level_index);

  int degree_ = 0;
  std::vector<Level> levels_;
};

BigUint group_order(const std::vector<PermWord>& generators);

std::vector<word> orbit_of(const std::vector<PermWord>& generators, word start);

// Partition of the points into equal-size blocks permuted by every generator.
struct BlockSystem {
  std::vector<std::vector<word>> blocks;  // each sorted, ordered by first point

  bool trivial() const {
    return blocks.size() <= 1 || blocks.front().size() == 1;
  }
};

// Minimal block system of the transitive group whose block joins the two
// points; singletons-or-everything means the pair witnesses no imprimitivity.
BlockSystem minimal_blocks(const std::vector<PermWord>& generators, word a, word b);

// First pair {0, x} whose minimal system is non-trivial, if any.
std::optional<BlockSystem> is_imprimitive(const std::vector<PermWord>& generators);

}  // namespace fpt
