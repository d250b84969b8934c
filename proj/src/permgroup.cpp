#include "fpt/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace fpt {
namespace {

constexpr std::uint32_t kLimbBase = 1000000000;

PermWord identity_perm(int n) {
  PermWord g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), word{0});
  return g;
}

bool is_identity(const PermWord& g) {
  for (word x = 0; x < g.size(); ++x)
    if (g[x] != x) return false;
  return true;
}

word first_moved(const PermWord& g) {
  for (word x = 0; x < g.size(); ++x)
    if (g[x] != x) return x;
  throw std::logic_error("identity has no moved point");
}

// x^(g then h)
PermWord compose(const PermWord& g, const PermWord& h) {
  PermWord out(g.size());
  for (word x = 0; x < g.size(); ++x) out[x] = h[g[x]];
  return out;
}

PermWord invert(const PermWord& g) {
  PermWord out(g.size());
  for (word x = 0; x < g.size(); ++x) out[g[x]] = x;
  return out;
}

// degrees need not be powers of two, so require_permutation does not apply
void check_bijection(const PermWord& g, const char* what) {
  std::vector<bool> seen(g.size(), false);
  for (word y : g) {
    if (y >= g.size() || seen[y])
      throw std::invalid_argument(std::string(what) +
                                  ": image array is not a permutation");
    seen[y] = true;
  }
}

void validate_generators(const std::vector<PermWord>& gens) {
  if (gens.empty()) throw std::invalid_argument("at least one generator is required");
  if (gens.size() > kMaxGenerators)
    throw std::invalid_argument("too many generators");
  for (const PermWord& g : gens) {
    if (g.empty() || g.size() > kMaxPoints)
      throw std::invalid_argument("generator degree out of range [1,4096]");
    if (g.size() != gens.front().size())
      throw std::invalid_argument("generators act on different point counts");
    check_bijection(g, "generator");
  }
}

}  // namespace

BigUint::BigUint(std::uint64_t v) {
  limbs_.clear();
  do {
    limbs_.push_back(static_cast<std::uint32_t>(v % kLimbBase));
    v /= kLimbBase;
  } while (v != 0);
}

BigUint& BigUint::operator*=(std::uint32_t m) {
  std::uint64_t carry = 0;
  for (std::uint32_t& limb : limbs_) {
    const std::uint64_t cur = std::uint64_t{limb} * m + carry;
    limb = static_cast<std::uint32_t>(cur % kLimbBase);
    carry = cur / kLimbBase;
  }
  while (carry != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kLimbBase));
    carry /= kLimbBase;
  }
  if (limbs_.size() > 1 && limbs_.back() == 0) limbs_ = {0};  // m == 0
  return *this;
}

std::string BigUint::str() const {
  std::string out = std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

StabilizerChain::StabilizerChain(std::vector<PermWord> generators) {
  validate_generators(generators);
  degree_ = static_cast<int>(generators.front().size());
  for (PermWord& g : generators) {
    auto [residue, depth] = strip(std::move(g), 0);
    if (is_identity(residue)) continue;
    if (depth == levels_.size()) {
      levels_.push_back(Level{first_moved(residue), {}, {}, {}, {}, {}});
    }
    add_strong_generator(residue, 0, depth);
    for (std::size_t l = depth + 1; l-- > 0;) complete_level(l);
  }
}

void StabilizerChain::rebuild_orbit(Level& level) const {
  level.orbit.assign(1, level.beta);
  level.reps.assign(static_cast<std::size_t>(degree_), {});
  level.rep_invs.assign(static_cast<std::size_t>(degree_), {});
  level.reps[level.beta] = identity_perm(degree_);
  level.rep_invs[level.beta] = level.reps[level.beta];
  for (std::size_t head = 0; head < level.orbit.size(); ++head) {
    const word p = level.orbit[head];
    for (std::size_t gi = 0; gi < level.gens.size(); ++gi) {
      const word q = level.gens[gi][p];
      if (level.reps[q].empty()) {
        level.reps[q] = compose(level.reps[p], level.gens[gi]);
        level.rep_invs[q] = compose(level.gen_invs[gi], level.rep_invs[p]);
        level.orbit.push_back(q);
      }
    }
  }
}

std::pair<PermWord, std::size_t> StabilizerChain::strip(PermWord g,
                                                        std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& level = levels_[i];
    const word p = g[level.beta];
    if (p >= level.rep_invs.size() || level.rep_invs[p].empty()) return {g, i};
    g = compose(g, level.rep_invs[p]);
  }
  return {g, levels_.size()};
}

void StabilizerChain::add_strong_generator(const PermWord& g, std::size_t lo,
                                           std::size_t hi) {
  // g fixes beta_0..beta_{hi-1}, so it may join every chain in the range
  for (std::size_t l = lo; l <= hi; ++l) {
    levels_[l].gens.push_back(g);
    levels_[l].gen_invs.push_back(invert(g));
  }
}

void StabilizerChain::complete_level(std::size_t level_index) {
  rebuild_orbit(levels_[level_index]);
  // index levels_ afresh below: the recursion can reallocate the vector
  for (std::size_t head = 0; head < levels_[level_index].orbit.size(); ++head) {
    const word p = levels_[level_index].orbit[head];
    for (std::size_t gi = 0; gi < levels_[level_index].gens.size(); ++gi) {
      const Level& level = levels_[level_index];
      const PermWord& s = level.gens[gi];
      // Schreier generator u_p s u_{p^s}^{-1}, a stabilizer element
      PermWord schreier =
          compose(compose(level.reps[p], s), level.rep_invs[s[p]]);
      auto [residue, depth] = strip(std::move(schreier), level_index + 1);
      if (is_identity(residue)) continue;
      if (depth == levels_.size()) {
        levels_.push_back(Level{first_moved(residue), {}, {}, {}, {}, {}});
      }
      add_strong_generator(residue, level_index + 1, depth);
      for (std::size_t l = depth; l > level_index; --l) complete_level(l);
      // new deeper generators never shrink what already stripped to identity
    }
  }
}

BigUint StabilizerChain::order() const {
  BigUint n(1);
  for (const Level& level : levels_)
    n *= static_cast<std::uint32_t>(level.orbit.size());
  return n;
}

bool StabilizerChain::contains(const PermWord& g) const {
  if (static_cast<int>(g.size()) != degree_)
    throw std::invalid_argument("membership candidate acts on the wrong point count");
  check_bijection(g, "membership candidate");
  auto [residue, depth] = strip(g, 0);
  (void)depth;
  return is_identity(residue);
}

BigUint group_order(const std::vector<PermWord>& generators) {
  return StabilizerChain(generators).order();
}

std::vector<word> orbit_of(const std::vector<PermWord>& generators, word start) {
  validate_generators(generators);
  if (generators.empty()) return {start};
  const std::size_t n = generators.front().size();
  if (start >= n) throw std::invalid_argument("orbit start point out of range");
  std::vector<bool> seen(n, false);
  std::vector<word> orbit{start};
  seen[start] = true;
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (const PermWord& g : generators) {
      const word q = g[orbit[head]];
      if (!seen[q]) {
        seen[q] = true;
        orbit.push_back(q);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

namespace {

struct UnionFind {
  std::vector<word> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), word{0});
  }
  word find(word x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // returns false when already joined
  bool unite(word a, word b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

BlockSystem minimal_blocks(const std::vector<PermWord>& generators, word a, word b) {
  validate_generators(generators);
  const std::size_t n = generators.front().size();
  if (a >= n || b >= n) throw std::invalid_argument("block pair out of range");
  if (orbit_of(generators, 0).size() != n)
    throw std::invalid_argument("group is not transitive");

  // Atkinson refinement: joining two points forces joining their images
  UnionFind uf(n);
  std::vector<std::pair<word, word>> pending;
  if (uf.unite(a, b)) pending.emplace_back(a, b);
  while (!pending.empty()) {
    const auto [u, v] = pending.back();
    pending.pop_back();
    for (const PermWord& g : generators)
      if (uf.unite(g[u], g[v])) pending.emplace_back(g[u], g[v]);
  }

  std::vector<std::vector<word>> grouped(n);
  for (word x = 0; x < n; ++x) grouped[uf.find(x)].push_back(x);
  BlockSystem out;
  for (auto& block : grouped)
    if (!block.empty()) out.blocks.push_back(std::move(block));

  const std::size_t size = out.blocks.front().size();
  std::vector<word> root_of(n);
  for (const auto& block : out.blocks) {
    if (block.size() != size) throw std::logic_error("blocks ended up uneven");
    for (word x : block) root_of[x] = block.front();
  }
  for (const PermWord& g : generators)
    for (const auto& block : out.blocks) {
      const word target = root_of[g[block.front()]];
      for (word x : block)
        if (root_of[g[x]] != target)
          throw std::logic_error("block system is not generator-invariant");
    }
  return out;
}

std::optional<BlockSystem> is_imprimitive(const std::vector<PermWord>& generators) {
  validate_generators(generators);
  const std::size_t n = generators.front().size();
  for (word x = 1; x < n; ++x) {
    BlockSystem bs = minimal_blocks(generators, 0, x);
    if (!bs.trivial()) return bs;
  }
  return std::nullopt;
}

}  // namespace fpt
