#include "fpt/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace fpt {

static void check_table(std::span<const word> f, int width, const char* what) {
  if (f.size() != std::size_t(1) << width)
    throw std::invalid_argument(std::string(what) + ": table size does not match width");
  require_permutation(f, what);
}

GenericPartition::GenericPartition(int width, std::vector<int> block_of)
    : width_(width), block_of_(std::move(block_of)) {
  if (block_of_.size() != std::size_t(1) << width)
    throw std::invalid_argument("partition: one block id per point required");
  // normalize ids by first appearance
  std::vector<int> relabel(block_of_.size(), -1);
  int next = 0;
  for (auto& id : block_of_) {
    if (id < 0 || id >= static_cast<int>(block_of_.size()))
      throw std::invalid_argument("partition: block id out of range");
    if (relabel[id] < 0) relabel[id] = next++;
    id = relabel[id];
  }
  nblocks_ = next;
}

GenericPartition GenericPartition::from_blocks(int width,
                                               const std::vector<std::vector<word>>& blocks) {
  std::vector<int> ids(std::size_t(1) << width, -1);
  int bid = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("partition: empty block");
    for (word v : block) {
      checked_vector(v, width);
      if (ids[v] != -1)
        throw std::invalid_argument("partition: point " + std::to_string(v) +
                                    " listed twice");
      ids[v] = bid;
    }
    ++bid;
  }
  for (std::size_t v = 0; v < ids.size(); ++v)
    if (ids[v] == -1)
      throw std::invalid_argument("partition: point " + std::to_string(v) +
                                  " is not covered");
  return GenericPartition(width, std::move(ids));
}

std::vector<std::vector<word>> GenericPartition::blocks() const {
  std::vector<std::vector<word>> out(nblocks_);
  for (std::size_t v = 0; v < block_of_.size(); ++v)
    out[block_of_[v]].push_back(static_cast<word>(v));
  return out;
}

GenericPartition linear_partition(const Subspace& u) {
  const std::size_t size = std::size_t(1) << u.width();
  std::vector<int> ids(size, -1);
  const auto elems = u.elements();
  int next = 0;
  for (std::size_t v = 0; v < size; ++v) {
    if (ids[v] != -1) continue;
    for (word e : elems) ids[v ^ e] = next;
    ++next;
  }
  return GenericPartition(u.width(), std::move(ids));
}

std::optional<Subspace> as_linear(const GenericPartition& p) {
  const std::size_t size = std::size_t(1) << p.width();
  // candidate U = block of 0, which must be closed under xor
  Subspace u(p.width());
  std::size_t zero_block_size = 0;
  const int zid = p.block_id(0);
  for (std::size_t v = 0; v < size; ++v)
    if (p.block_id(static_cast<word>(v)) == zid) {
      ++zero_block_size;
      u.insert(static_cast<word>(v));
    }
  if ((std::size_t(1) << u.dim()) != zero_block_size) return std::nullopt;
  // every block must be a union of U-cosets; equal counts then force equality
  if (std::size_t(p.block_count()) != (size >> u.dim())) return std::nullopt;
  for (std::size_t v = 0; v < size; ++v)
    for (word b : u.basis())
      if (p.block_id(static_cast<word>(v) ^ b) != p.block_id(static_cast<word>(v)))
        return std::nullopt;
  return u;
}

bool maps_partition(std::span<const word> f, const GenericPartition& a,
                    const GenericPartition& b) {
  if (a.width() != b.width()) throw std::invalid_argument("maps_partition: width mismatch");
  check_table(f, a.width(), "maps_partition");
  // {Af} = B iff the induced block map is a well-defined injection
  std::vector<int> to(a.block_count(), -1);
  std::vector<bool> hit(b.block_count(), false);
  for (std::size_t v = 0; v < f.size(); ++v) {
    const int ia = a.block_id(static_cast<word>(v));
    const int ib = b.block_id(f[v]);
    if (to[ia] == -1) {
      if (hit[ib]) return false;  // two A-blocks land in one B-block
      to[ia] = ib;
      hit[ib] = true;
    } else if (to[ia] != ib) {
      return false;
    }
  }
  return true;
}

bool translation_criterion(const GenericPartition& a, const GenericPartition& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("translation_criterion: width mismatch");
  const std::size_t size = std::size_t(1) << a.width();
  bool scan = true;
  std::vector<word> sigma(size);
  for (std::size_t t = 0; t < size && scan; ++t) {
    for (std::size_t v = 0; v < size; ++v) sigma[v] = static_cast<word>(v ^ t);
    if (!maps_partition(sigma, a, b)) scan = false;
  }
  const bool analytic = (a == b) && as_linear(a).has_value();
  if (scan != analytic)
    throw std::logic_error("translation criterion: scan and predicate disagree");
  return scan;
}

std::optional<Subspace> propagate_linear(std::span<const word> f, const Subspace& u) {
  check_table(f, u.width(), "propagate_linear");
  const std::size_t size = f.size();
  const auto elems = u.elements();

  // candidate W from the 0-coset; fail fast if the image is not a subspace
  Subspace w(u.width());
  const word f0 = f[0];
  for (word e : elems) w.insert(f[e] ^ f0);
  if (w.dim() != u.dim()) return std::nullopt;

  std::vector<bool> visited(size, false);
  for (word e : elems) visited[e] = true;
  for (std::size_t v = 0; v < size; ++v) {
    if (visited[v]) continue;
    const word fv = f[v];
    for (word e : elems) {
      visited[v ^ e] = true;
      if (!w.contains(f[v ^ e] ^ fv)) return std::nullopt;
    }
  }
  return w;
}

std::vector<std::pair<Subspace, Subspace>> search_propagating_pairs(
    std::span<const word> f, int width, std::optional<std::vector<int>> dims, int jobs) {
  check_table(f, width, "search_propagating_pairs");
  if (!dims && width > 8)
    throw std::invalid_argument(
        "search_propagating_pairs: width > 8 needs a dimension filter");

  std::vector<Subspace> candidates;
  const auto collect = [&](const Subspace& u) {
    if (u.proper_nontrivial()) candidates.push_back(u);
  };
  if (dims) {
    for (int d : *dims) for_each_subspace_of_dim(width, d, collect);
  } else {
    for_each_subspace(width, collect);
  }

  std::vector<std::pair<Subspace, Subspace>> out;
  if (jobs <= 1) {
    for (const auto& u : candidates)
      if (auto w = propagate_linear(f, u)) out.emplace_back(u, *w);
  } else {
    // shard by candidate index, merge, and restore the deterministic order
    std::vector<std::vector<std::pair<Subspace, Subspace>>> shards(jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < candidates.size(); i += jobs)
          if (auto w = propagate_linear(f, candidates[i]))
            shards[t].emplace_back(candidates[i], *w);
      });
    for (auto& th : pool) th.join();
    for (auto& s : shards) out.insert(out.end(), s.begin(), s.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (!(x.first == y.first)) return x.first < y.first;
    return x.second < y.second;
  });
  return out;
}

}  // namespace fpt
