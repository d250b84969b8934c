#include "fpt/sbox.hpp"

#include <stdexcept>

namespace fpt {

SBox::SBox(int width_, std::vector<word> table_) : width(width_), table(std::move(table_)) {
  if (width < 1 || width > kMaxWidth)
    throw std::invalid_argument("sbox width out of range");
  if (table.size() != std::size_t(1) << width)
    throw std::invalid_argument("sbox table size does not match the declared width");
  require_permutation(table, "sbox");
}

DDT ddt(const SBox& f) {
  const std::size_t n = f.table.size();
  DDT t;
  t.width = f.width;
  t.counts.assign(n * n, 0);
  for (word a = 0; a < n; ++a)
    for (word x = 0; x < n; ++x)
      t.counts[(std::size_t(a) << f.width) | (f(x) ^ f(x ^ a))]++;
  return t;
}

UniformityReport differential_uniformity(const SBox& f) {
  const DDT t = ddt(f);
  const std::size_t n = f.table.size();
  UniformityReport r;
  for (word a = 1; a < n; ++a)
    for (word b = 0; b < n; ++b)
      r.delta = std::max<int>(r.delta, t.at(a, b));
  r.apn = (r.delta == 2);
  return r;
}

bool is_weakly_uniform(const SBox& f, int delta) {
  if (delta < 1) throw std::invalid_argument("is_weakly_uniform: delta must be >= 1");
  const std::size_t n = f.table.size();
  const std::uint64_t half = std::uint64_t(1) << (f.width - 1);
  for (word a = 1; a < n; ++a) {
    std::vector<bool> seen(n, false);
    std::uint64_t count = 0;
    for (word x = 0; x < n; ++x) {
      const word d = f(x) ^ f(x ^ a);
      if (!seen[d]) {
        seen[d] = true;
        ++count;
      }
    }
    if (count * std::uint64_t(delta) <= half) return false;
  }
  return true;
}

AntiInvarianceReport anti_invariance_order(const SBox& f) {
  AntiInvarianceReport r;
  std::vector<word> g = f.table;
  if (g[0] != 0) {
    r.normalized = true;
    const word c = g[0];
    for (auto& v : g) v ^= c;
  }
  const int s = f.width;
  // largest dimension of a proper non-trivial subspace with subspace image;
  // scan top-down so the first hit settles it
  int m = 0;
  for (int d = s - 1; d >= 1 && m == 0; --d) {
    for_each_subspace_of_dim(s, d, [&](const Subspace& u) {
      if (m != 0) return;
      Subspace image(s);
      for (word e : u.elements()) image.insert(g[e]);
      if (image.dim() == d) m = d;  // image of 2^d distinct points spans dim d => it is a subspace
    });
  }
  r.order = (m == 0) ? s - 1 : s - 1 - m;
  return r;
}

ParallelSBox::ParallelSBox(const BrickLayout& layout_, std::vector<SBox> boxes_)
    : layout(layout_), boxes(std::move(boxes_)) {
  if (boxes.size() != std::size_t(layout.b))
    throw std::invalid_argument("parallel sbox needs exactly one box per brick");
  for (const auto& box : boxes)
    if (box.width != layout.s)
      throw std::invalid_argument("parallel sbox: box width does not match the brick size");
}

word ParallelSBox::apply(word x) const {
  word y = 0;
  const word mask = (word(1) << layout.s) - 1;
  for (int j = 0; j < layout.b; ++j)
    y |= boxes[j]((x >> (j * layout.s)) & mask) << (j * layout.s);
  return y;
}

std::vector<word> ParallelSBox::to_table() const {
  std::vector<word> t(std::size_t(1) << layout.width());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = apply(static_cast<word>(x));
  return t;
}

word parallel_apply(const ParallelSBox& gamma, word x) {
  return gamma.apply(checked_vector(x, gamma.layout.width()));
}

SBox cube_box() { return SBox(3, {0, 1, 3, 4, 5, 6, 7, 2}); }

}  // namespace fpt
