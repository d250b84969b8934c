#include "fpt/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fpt {

static void check_width(int width) {
  if (width < 1 || width > kMaxWidth * 2)
    throw std::invalid_argument("vector width " + std::to_string(width) +
                                " out of range [1," + std::to_string(kMaxWidth * 2) + "]");
}

word checked_vector(word v, int width) {
  check_width(width);
  if (width < 32 && (v >> width) != 0)
    throw std::invalid_argument("vector value " + std::to_string(v) +
                                " does not fit width " + std::to_string(width));
  return v;
}

// splitmix64 step, reduced by rejection so results are unbiased and stable
// across platforms (no std::uniform_int_distribution).
word rand_below(std::uint64_t& state, word bound) {
  if (bound == 0) throw std::invalid_argument("rand_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    if (z < limit) return static_cast<word>(z % bound);
  }
}

BitVec::BitVec(word b, int n) : bits(checked_vector(b, n)), width(n) {}

BitVec BitVec::operator^(const BitVec& o) const {
  if (width != o.width) throw std::invalid_argument("BitVec width mismatch");
  return BitVec(bits ^ o.bits, width);
}

std::string BitVec::to_string() const {
  std::string s;
  for (int i = width - 1; i >= 0; --i) s += bit(i) ? '1' : '0';
  return s;
}

Subspace::Subspace(int width) : width_(width) { check_width(width); }

Subspace Subspace::full(int width) {
  Subspace u(width);
  for (int i = width - 1; i >= 0; --i) u.basis_.push_back(word(1) << i);
  return u;
}

Subspace Subspace::from_vectors(int width, std::span<const word> vectors) {
  Subspace u(width);
  for (word v : vectors) u.insert(checked_vector(v, width));
  return u;
}

bool Subspace::insert(word v) {
  checked_vector(v, width_);
  v = reduce(v);
  if (v == 0) return false;
  const int lead = std::bit_width(v) - 1;
  // keep the representation reduced: clear the new pivot everywhere else
  for (word& row : basis_)
    if ((row >> lead) & 1u) row ^= v;
  auto pos = std::find_if(basis_.begin(), basis_.end(),
                          [&](word row) { return row < v; });
  basis_.insert(pos, v);
  return true;
}

word Subspace::reduce(word v) const {
  for (word row : basis_) {
    const word lead = word(1) << (std::bit_width(row) - 1);
    if (v & lead) v ^= row;
  }
  return v;
}

bool Subspace::contains_subspace(const Subspace& other) const {
  if (other.width_ != width_) return false;
  for (word row : other.basis_)
    if (!contains(row)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.width_ != width_) throw std::invalid_argument("subspace width mismatch");
  Subspace u = *this;
  for (word row : other.basis_) u.insert(row);
  return u;
}

std::vector<word> Subspace::elements() const {
  std::vector<word> out(std::size_t(1) << dim(), 0);
  std::size_t count = 1;
  for (word row : basis_) {
    for (std::size_t i = 0; i < count; ++i) out[count + i] = out[i] ^ row;
    count *= 2;
  }
  return out;
}

bool Subspace::operator<(const Subspace& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  return basis_ < o.basis_;
}

Subspace rref_basis(int width, std::span<const word> vectors) {
  return Subspace::from_vectors(width, vectors);
}

word coset_rep(const Subspace& u, word v) { return u.reduce(checked_vector(v, u.width())); }

BrickLayout::BrickLayout(int s_, int b_) : s(s_), b(b_) {
  if (s < 1 || b < 1 || s * b > kMaxWidth)
    throw std::invalid_argument("brick layout " + std::to_string(s_) + "x" +
                                std::to_string(b_) + " exceeds the width cap");
}

word BrickLayout::brick_mask(int j) const {
  if (j < 0 || j >= b) throw std::invalid_argument("brick index out of range");
  return ((word(1) << s) - 1) << (j * s);
}

Wall::Wall(const BrickLayout& l, word m) : layout(l), members(m) {
  const word all = (word(1) << l.b) - 1;
  if (m == 0 || m >= all)
    throw std::invalid_argument("wall member mask must be proper and non-empty");
}

Subspace wall_subspace(const BrickLayout& layout, word members) {
  Wall w(layout, members);  // validates
  Subspace u(layout.width());
  for (int j = 0; j < layout.b; ++j)
    if ((members >> j) & 1u)
      for (int i = 0; i < layout.s; ++i) u.insert(word(1) << (j * layout.s + i));
  return u;
}

Subspace wall_subspace(const Wall& w) { return wall_subspace(w.layout, w.members); }

std::optional<Wall> as_wall(const BrickLayout& layout, const Subspace& u) {
  if (u.width() != layout.width()) return std::nullopt;
  word members = 0;
  for (word row : u.basis())
    for (int j = 0; j < layout.b; ++j)
      if (row & layout.brick_mask(j)) members |= word(1) << j;
  if (members == 0 || members == (word(1) << layout.b) - 1) return std::nullopt;
  if (u.dim() != layout.s * std::popcount(members)) return std::nullopt;
  if (!(wall_subspace(layout, members) == u)) return std::nullopt;
  return Wall(layout, members);
}

LinearMap::LinearMap(int width, std::vector<word> rows) : width_(width), rows_(std::move(rows)) {
  check_width(width);
  if (rows_.size() != static_cast<std::size_t>(width))
    throw std::invalid_argument("linear map needs exactly one row per coordinate");
  for (word r : rows_) checked_vector(r, width);
}

LinearMap LinearMap::identity(int width) {
  std::vector<word> rows(width);
  for (int i = 0; i < width; ++i) rows[i] = word(1) << i;
  return LinearMap(width, std::move(rows));
}

word LinearMap::apply(word x) const {
  word y = 0;
  while (x) {
    const int i = std::countr_zero(x);
    x &= x - 1;
    y ^= rows_[i];
  }
  return y;
}

int LinearMap::rank() const {
  Subspace u(width_);
  for (word r : rows_) u.insert(r);
  return u.dim();
}

LinearMap LinearMap::inverse() const {
  // Gauss-Jordan on [rows | I].
  std::vector<word> a = rows_, inv(width_);
  for (int i = 0; i < width_; ++i) inv[i] = word(1) << i;
  for (int col = 0; col < width_; ++col) {
    int pivot = -1;
    for (int r = col; r < width_; ++r)
      if ((a[r] >> col) & 1u) { pivot = r; break; }
    if (pivot < 0) throw std::invalid_argument("linear map is singular");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (int r = 0; r < width_; ++r)
      if (r != col && ((a[r] >> col) & 1u)) { a[r] ^= a[col]; inv[r] ^= inv[col]; }
  }
  return LinearMap(width_, std::move(inv));
}

LinearMap LinearMap::compose(const LinearMap& then) const {
  if (then.width_ != width_) throw std::invalid_argument("compose width mismatch");
  std::vector<word> rows(width_);
  for (int i = 0; i < width_; ++i) rows[i] = then.apply(rows_[i]);
  return LinearMap(width_, std::move(rows));
}

std::vector<word> LinearMap::to_table() const {
  std::vector<word> t(std::size_t(1) << width_);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = apply(static_cast<word>(x));
  return t;
}

void require_permutation(std::span<const word> table, const char* what) {
  const std::size_t n = table.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument(std::string(what) + ": table size must be a power of two");
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i] >= n)
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(i) +
                                  " value " + std::to_string(table[i]) + " out of range");
    if (seen[table[i]])
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(i) +
                                  " duplicates value " + std::to_string(table[i]));
    seen[table[i]] = true;
  }
}

bool is_affine_table(std::span<const word> table) {
  const std::size_t n = table.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("is_affine: table size must be a power of two");
  const int width = std::countr_zero(n);
  const word c = table[0];
  std::vector<word> rows(width);
  for (int i = 0; i < width; ++i) rows[i] = table[std::size_t(1) << i] ^ c;
  LinearMap l(width, std::move(rows));
  for (std::size_t x = 0; x < n; ++x)
    if ((l.apply(static_cast<word>(x)) ^ c) != table[x]) return false;
  return true;
}

bool is_affine(std::span<const word> table) {
  require_permutation(table, "is_affine");
  return is_affine_table(table);
}

std::uint64_t galois_number(int n) {
  if (n < 0) throw std::invalid_argument("galois_number: negative n");
  if (n > 14) throw std::invalid_argument("galois_number: n > 14 overflows uint64");
  std::uint64_t prev = 1, cur = 2;  // G_0, G_1
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const std::uint64_t next = 2 * cur + ((std::uint64_t(1) << k) - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void for_each_subspace_of_dim(int width, int dim,
                              const std::function<void(const Subspace&)>& fn) {
  check_width(width);
  if (dim < 0 || dim > width) return;
  if (dim == 0) {
    fn(Subspace(width));
    return;
  }
  // Echelon construction: pick the pivot set, then run an odometer over the
  // free entries (positions below a row's pivot that are not pivots of other
  // rows). Every subspace shows up exactly once.
  for (word pivots = 0; pivots < (word(1) << width); ++pivots) {
    if (std::popcount(pivots) != dim) continue;
    std::vector<int> pivot_pos;  // descending, matches basis row order
    for (int i = width - 1; i >= 0; --i)
      if ((pivots >> i) & 1u) pivot_pos.push_back(i);
    std::vector<std::vector<int>> free_pos(dim);
    for (int r = 0; r < dim; ++r)
      for (int i = 0; i < pivot_pos[r]; ++i)
        if (!((pivots >> i) & 1u)) free_pos[r].push_back(i);

    std::vector<word> rows(dim);
    std::vector<word> counters(dim, 0);
    const auto build_row = [&](int r) {
      word v = word(1) << pivot_pos[r];
      for (std::size_t j = 0; j < free_pos[r].size(); ++j)
        if ((counters[r] >> j) & 1u) v |= word(1) << free_pos[r][j];
      rows[r] = v;
    };
    for (int r = 0; r < dim; ++r) build_row(r);
    for (;;) {
      Subspace u(width);
      for (int r = dim - 1; r >= 0; --r) u.insert(rows[r]);
      fn(u);
      int r = dim - 1;
      while (r >= 0) {
        counters[r]++;
        if (counters[r] < (word(1) << free_pos[r].size())) {
          build_row(r);
          break;
        }
        counters[r] = 0;
        build_row(r);
        --r;
      }
      if (r < 0) break;
    }
  }
}

void for_each_subspace(int width, const std::function<void(const Subspace&)>& fn) {
  if (width > 12)
    throw std::invalid_argument("full subspace enumeration needs width <= 12; "
                                "pass a dimension filter instead");
  for (int d = 0; d <= width; ++d) for_each_subspace_of_dim(width, d, fn);
}

std::vector<Subspace> enumerate_subspaces(int width, std::optional<std::vector<int>> dims) {
  std::vector<Subspace> out;
  if (!dims) {
    for_each_subspace(width, [&](const Subspace& u) { out.push_back(u); });
  } else {
    for (int d : *dims) for_each_subspace_of_dim(width, d, [&](const Subspace& u) { out.push_back(u); });
  }
  return out;
}

}  // namespace fpt
