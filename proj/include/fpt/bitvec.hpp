// Packed GF(2) vectors, canonical subspaces, brick layouts and walls.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpt {

using word = std::uint32_t;

// Width cap: V = GF(2)^n with n <= 16, so a pair (x1,x2) in V x V still fits a word.
inline constexpr int kMaxWidth = 16;

word checked_vector(word v, int width);  // throws std::invalid_argument if v >= 2^width
word rand_below(std::uint64_t& state, word bound);  // helper: uniform in [0,bound), splitmix-based

// One vector of GF(2)^n. Coordinate 1 is the least significant bit.
struct BitVec {
  word bits = 0;
  int width = 0;

  BitVec() = default;
  BitVec(word b, int n);

  BitVec operator^(const BitVec& o) const;
  bool operator==(const BitVec&) const = default;
  bool bit(int i) const { return (bits >> i) & 1u; }
  std::string to_string() const;  // coordinate n down to coordinate 1
};

// Subspace of GF(2)^n held as a reduced echelon basis: each basis vector has a
// distinct leading (highest set) bit, that bit is clear in every other basis
// vector, and vectors are sorted by leading bit descending. The representation
// is canonical, so operator== decides subspace equality.
class Subspace {
 public:
  explicit Subspace(int width);  // zero subspace
  static Subspace full(int width);
  static Subspace from_vectors(int width, std::span<const word> vectors);

  int width() const { return width_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<word>& basis() const { return basis_; }

  bool insert(word v);       // span-add; returns true if the dimension grew
  word reduce(word v) const; // canonical coset representative (all pivot bits clear)
  bool contains(word v) const { return reduce(v) == 0; }
  bool contains_subspace(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  bool is_trivial() const { return basis_.empty(); }
  bool is_full() const { return dim() == width_; }
  bool proper_nontrivial() const { return !is_trivial() && !is_full(); }

  std::vector<word> elements() const;  // all 2^dim elements, 0 first

  bool operator==(const Subspace&) const = default;
  bool operator<(const Subspace& o) const;  // (dim, basis words) lexicographic

 private:
  int width_;
  std::vector<word> basis_;
};

Subspace rref_basis(int width, std::span<const word> vectors);
word coset_rep(const Subspace& u, word v);

// V = V_1 + ... + V_b with every brick of dimension s; brick 1 sits in the low bits.
struct BrickLayout {
  int s = 0;
  int b = 0;

  BrickLayout() = default;
  BrickLayout(int s_, int b_);  // validates s >= 1, b >= 1, s*b <= kMaxWidth

  int width() const { return s * b; }
  word brick_mask(int j) const;       // brick index 0-based
  int brick_of(int bit) const { return bit / s; }
  bool operator==(const BrickLayout&) const = default;
};

// Wall: direct sum of the member bricks. members is a bitmask over b bricks and
// must be proper and non-empty (1 <= members <= 2^b - 2).
struct Wall {
  BrickLayout layout;
  word members = 0;

  Wall() = default;
  Wall(const BrickLayout& l, word m);
  bool operator==(const Wall&) const = default;
};

Subspace wall_subspace(const BrickLayout& layout, word members);
Subspace wall_subspace(const Wall& w);
std::optional<Wall> as_wall(const BrickLayout& layout, const Subspace& u);

// Linear map given by rows: rows[i] is the image of the i-th unit vector.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(int width, std::vector<word> rows);  // range-checks the rows
  static LinearMap identity(int width);

  int width() const { return width_; }
  const std::vector<word>& rows() const { return rows_; }
  word apply(word x) const;
  int rank() const;
  bool invertible() const { return rank() == width_; }
  LinearMap inverse() const;  // throws on singular maps
  LinearMap compose(const LinearMap& then) const;  // x -> then(this(x))
  std::vector<word> to_table() const;

  bool operator==(const LinearMap&) const = default;

 private:
  int width_ = 0;
  std::vector<word> rows_;
};

// Affineness test for a permutation table: f(x) = L(x) + f(0) for linear L.
bool is_affine(std::span<const word> table);
// Same test for arbitrary (not necessarily bijective) tables.
bool is_affine_table(std::span<const word> table);
void require_permutation(std::span<const word> table, const char* what);

// Number of subspaces of GF(2)^n (Galois number), by the recurrence
// G_{n+1} = 2 G_n + (2^n - 1) G_{n-1}. Guarded against uint64 overflow.
std::uint64_t galois_number(int n);

// Enumerate every subspace of GF(2)^width exactly once, dimension ascending,
// canonical echelon construction (no dedup pass needed). A dimension filter is
// required for width > 12.
void for_each_subspace(int width, const std::function<void(const Subspace&)>& fn);
void for_each_subspace_of_dim(int width, int dim,
                              const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> enumerate_subspaces(int width,
                                          std::optional<std::vector<int>> dims = std::nullopt);

}  // namespace fpt
