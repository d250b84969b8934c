// Partitions of GF(2)^n, linear partitions L(U) = {U + v}, the translation
// criterion, and coset-wise propagation through a permutation.
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fpt/bitvec.hpp"

namespace fpt {

// Partition of the 2^width points. Blocks are stored as a block-id per point;
// ids are normalized by first appearance, so equal partitions compare equal.
class GenericPartition {
 public:
  GenericPartition(int width, std::vector<int> block_of);
  static GenericPartition from_blocks(int width, const std::vector<std::vector<word>>& blocks);

  int width() const { return width_; }
  int block_count() const { return nblocks_; }
  int block_id(word v) const { return block_of_[v]; }
  std::vector<std::vector<word>> blocks() const;

  bool operator==(const GenericPartition&) const = default;

 private:
  int width_;
  std::vector<int> block_of_;
  int nblocks_;
};

GenericPartition linear_partition(const Subspace& u);

// Returns U when the partition is exactly L(U) for a subspace U.
std::optional<Subspace> as_linear(const GenericPartition& p);

// Does f carry partition A onto partition B ({Af} = B)?
bool maps_partition(std::span<const word> f, const GenericPartition& a,
                    const GenericPartition& b);

// Harpes-Massey style criterion: the translation group maps A into B iff
// A == B and A is linear. Computed by full translation scan AND by the
// analytic predicate, cross-asserted.
bool translation_criterion(const GenericPartition& a, const GenericPartition& b);

// If {f(U+v)} is again a linear partition L(W), return W. The candidate is
// built from the 0-coset and the remaining cosets are verified afterwards.
std::optional<Subspace> propagate_linear(std::span<const word> f, const Subspace& u);

// All proper non-trivial U (optionally dimension-filtered) with a propagated
// partner, ordered by (dim, basis).
std::vector<std::pair<Subspace, Subspace>> search_propagating_pairs(
    std::span<const word> f, int width,
    std::optional<std::vector<int>> dims = std::nullopt, int jobs = 1);

}  // namespace fpt
