#include "fpt/goursat.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace fpt {
namespace {

int lead(word v) { return 31 - std::countl_zero(v); }

// Gaussian elimination on the key halves with payloads carried through the row
// operations. Keys stay in reduced echelon form, leading bits descending. A row
// whose key cancels contributes its payload to `zeros` (when given).
void keyed_insert(std::vector<std::pair<word, word>>& rows, word key, word payload,
                  Subspace* zeros) {
  for (const auto& [k, p] : rows) {
    if ((key >> lead(k)) & 1u) {
      key ^= k;
      payload ^= p;
    }
  }
  if (key == 0) {
    if (zeros) zeros->insert(payload);
    return;
  }
  for (auto& [k, p] : rows) {
    if ((k >> lead(key)) & 1u) {
      k ^= key;
      p ^= payload;
    }
  }
  rows.emplace_back(key, payload);
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
}

// Evaluate the keyed basis at v; v must lie in the span of the keys.
word keyed_apply(const std::vector<std::pair<word, word>>& rows, word v) {
  word acc = 0;
  for (const auto& [k, p] : rows) {
    if ((v >> lead(k)) & 1u) {
      v ^= k;
      acc ^= p;
    }
  }
  if (v != 0) throw std::invalid_argument("vector outside the spanned domain");
  return acc;
}

// Basis vectors of `a` extending a basis of `b` to one of `a`.
std::vector<word> complement_basis(const Subspace& a, const Subspace& b) {
  Subspace acc = b;
  std::vector<word> out;
  for (word v : a.basis())
    if (acc.insert(v)) out.push_back(v);
  return out;
}

// Every subspace of `amb` of the given dimension, exactly once.
void for_each_subspace_within(const Subspace& amb, int dim,
                              const std::function<void(const Subspace&)>& fn) {
  const int k = amb.dim();
  if (dim > k) return;
  if (k == 0) {
    fn(Subspace(amb.width()));
    return;
  }
  for_each_subspace_of_dim(k, dim, [&](const Subspace& s) {
    Subspace mapped(amb.width());
    for (word row : s.basis()) {
      word v = 0;
      for (int j = 0; j < k; ++j)
        if ((row >> j) & 1u) v ^= amb.basis()[j];
      mapped.insert(v);
    }
    fn(mapped);
  });
}

}  // namespace

word pack_pair(word x1, word x2, int n) {
  checked_vector(x1, n);
  checked_vector(x2, n);
  return x1 | (x2 << n);
}

word pair_lo(word v, int n) { return v & ((word{1} << n) - 1u); }

word pair_hi(word v, int n) { return v >> n; }

GoursatTriple::GoursatTriple(int n, Subspace a_, Subspace b_, Subspace c_, Subspace d_,
                             std::vector<word> phi_)
    : width(n),
      a(std::move(a_)),
      b(std::move(b_)),
      c(std::move(c_)),
      d(std::move(d_)),
      phi(std::move(phi_)) {
  if (n < 1 || n > kMaxWidth) throw std::invalid_argument("pair width out of range");
  if (a.width() != n || b.width() != n || c.width() != n || d.width() != n)
    throw std::invalid_argument("triple factors must share the pair width");
  if (static_cast<int>(phi.size()) != a.dim())
    throw std::invalid_argument("phi must list one image per basis vector of A");
}

word GoursatTriple::apply_phi(word x) const {
  checked_vector(x, width);
  word acc = 0;
  const auto& rows = a.basis();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if ((x >> lead(rows[i])) & 1u) {
      x ^= rows[i];
      acc ^= phi[i];
    }
  }
  if (x != 0) throw std::invalid_argument("vector lies outside A");
  return acc;
}

Subspace GoursatTriple::kernel_phi() const {
  std::vector<std::pair<word, word>> rows;
  Subspace ker(width);
  for (std::size_t i = 0; i < phi.size(); ++i)
    keyed_insert(rows, phi[i], a.basis()[i], &ker);
  return ker;
}

Subspace GoursatTriple::image_phi() const { return Subspace::from_vectors(width, phi); }

void GoursatTriple::validate() const {
  if (!a.contains_subspace(b)) throw std::invalid_argument("B must lie inside A");
  if (!c.contains_subspace(d)) throw std::invalid_argument("D must lie inside C");
  if (a.dim() - b.dim() != c.dim() - d.dim())
    throw std::invalid_argument("A/B and C/D must have equal dimension");
  for (word img : phi) {
    if (!c.contains(img)) throw std::invalid_argument("phi image outside C");
    if (d.reduce(img) != img)
      throw std::invalid_argument("phi image is not reduced modulo D");
  }
  if (!(image_phi().sum(d) == c)) throw std::invalid_argument("phi(A) + D must equal C");
  if (!(kernel_phi() == b)) throw std::invalid_argument("kernel of phi must equal B");
}

PairSubgroup subgroup_from_triple(const GoursatTriple& t) {
  t.validate();
  Subspace u(2 * t.width);
  for (std::size_t i = 0; i < t.phi.size(); ++i)
    u.insert(pack_pair(t.a.basis()[i], t.phi[i], t.width));
  for (word dv : t.d.basis()) u.insert(pack_pair(0, dv, t.width));
  return u;
}

GoursatTriple decompose(const PairSubgroup& u, int n) {
  if (n < 1 || n > kMaxWidth) throw std::invalid_argument("pair width out of range");
  if (u.width() != 2 * n)
    throw std::invalid_argument("pair subgroup width must be twice the factor width");

  std::vector<std::pair<word, word>> lo_rows;
  Subspace d(n);
  for (word v : u.basis()) keyed_insert(lo_rows, pair_lo(v, n), pair_hi(v, n), &d);
  Subspace a(n);
  for (const auto& [k, p] : lo_rows) a.insert(k);

  std::vector<std::pair<word, word>> hi_rows;
  Subspace b(n);
  for (word v : u.basis()) keyed_insert(hi_rows, pair_hi(v, n), pair_lo(v, n), &b);
  Subspace c(n);
  for (const auto& [k, p] : hi_rows) c.insert(k);

  // lo_rows keys are exactly a.basis() in the same order, so the payloads give
  // phi on that basis once reduced modulo D.
  std::vector<word> phi;
  phi.reserve(lo_rows.size());
  for (const auto& [k, p] : lo_rows) phi.push_back(d.reduce(p));
  return GoursatTriple(n, std::move(a), std::move(b), std::move(c), std::move(d),
                       std::move(phi));
}

word feistel_point(std::span<const word> rho, word v, int n) {
  const word x1 = pair_lo(v, n);
  const word x2 = pair_hi(v, n);
  return pack_pair(x2, x1 ^ rho[x2], n);
}

PropagationConditions check_propagation_conditions(std::span<const word> rho,
                                                   const PairSubgroup& u1,
                                                   const PairSubgroup& u2, int n) {
  if (n < 1 || n > kMaxWidth) throw std::invalid_argument("width out of range");
  if (std::ssize(rho) != (std::ptrdiff_t{1} << n))
    throw std::invalid_argument("rho table must have 2^n entries");
  for (word y : rho) checked_vector(y, n);
  if (rho[0] != 0) throw std::invalid_argument("rho must fix 0");
  if (u1.width() != 2 * n || u2.width() != 2 * n)
    throw std::invalid_argument("subgroups must live in V x V");
  if (u1.dim() != u2.dim())
    throw std::invalid_argument("the Feistel operator does not map U1 onto U2");
  for (word v : u1.elements())
    if (!u2.contains(feistel_point(rho, v, n)))
      throw std::invalid_argument("the Feistel operator does not map U1 onto U2");

  const GoursatTriple t1 = decompose(u1, n);
  const GoursatTriple t2 = decompose(u2, n);

  PropagationConditions r;
  r.c1 = t2.d.contains_subspace(t1.kernel_phi());
  r.c2 = t1.a.contains_subspace(t2.d);
  r.c3 = t1.image_phi().sum(t1.d) == t2.a;
  r.c4 = true;
  for (word dv : t2.d.basis()) {
    if (!t1.a.contains(dv) || !t1.d.contains(t1.apply_phi(dv))) {
      r.c4 = false;
      break;
    }
  }

  r.clause_i_applies = t1.d.is_trivial() && t2.d.is_trivial();
  if (r.clause_i_applies) {
    r.clause_i = true;
    const auto& bs = t2.a.basis();
    const int k = t2.a.dim();
    for (word m = 0; m < (word{1} << k); ++m) {
      word x = 0, img = 0;
      for (int i = 0; i < k; ++i) {
        if ((m >> i) & 1u) {
          x ^= bs[i];
          img ^= rho[bs[i]];
        }
      }
      if (rho[x] != img) {
        r.clause_i = false;
        break;
      }
    }
  }

  r.clause_ii_applies = t1.is_product() && t2.is_product();
  if (r.clause_ii_applies) r.clause_ii = t1.d == t2.a && t2.d == t1.a;
  return r;
}

void for_each_triple(int n, const TripleConstraints& tc,
                     const std::function<void(const GoursatTriple&)>& fn) {
  if (n < 1 || n > 6) throw std::invalid_argument("triple enumeration supports n <= 6");
  const bool constrained = tc.exact_a.has_value() || tc.d_within.has_value() ||
                           tc.a_dim_lo > 0 || tc.a_dim_hi < n || tc.d_dim_lo > 0 ||
                           tc.d_dim_hi < n;
  if (!constrained && n > 4)
    throw std::invalid_argument("unconstrained triple enumeration needs n <= 4");

  std::vector<Subspace> a_list;
  if (tc.exact_a) {
    if (tc.exact_a->width() != n)
      throw std::invalid_argument("exact_a width must match n");
    if (tc.exact_a->dim() >= tc.a_dim_lo && tc.exact_a->dim() <= tc.a_dim_hi)
      a_list.push_back(*tc.exact_a);
  } else {
    for (int ad = std::max(0, tc.a_dim_lo); ad <= std::min(n, tc.a_dim_hi); ++ad)
      for_each_subspace_of_dim(n, ad, [&](const Subspace& s) { a_list.push_back(s); });
  }

  std::vector<Subspace> d_list;
  const int dlo = std::max(0, tc.d_dim_lo);
  const int dhi = std::min(n, tc.d_dim_hi);
  if (tc.d_within) {
    if (tc.d_within->width() != n)
      throw std::invalid_argument("d_within width must match n");
    for (int dd = dlo; dd <= std::min(dhi, tc.d_within->dim()); ++dd)
      for_each_subspace_within(*tc.d_within, dd,
                               [&](const Subspace& s) { d_list.push_back(s); });
  } else {
    for (int dd = dlo; dd <= dhi; ++dd)
      for_each_subspace_of_dim(n, dd, [&](const Subspace& s) { d_list.push_back(s); });
  }

  for (const Subspace& A : a_list) {
    for (const Subspace& D : d_list) {
      for (int bd = 0; bd <= A.dim(); ++bd) {
        const int k = A.dim() - bd;  // dim of A/B and of C/D
        const int cd = D.dim() + k;
        if (cd > n) continue;
        for_each_subspace_within(A, bd, [&](const Subspace& B) {
          const std::vector<word> xreps = complement_basis(A, B);
          for_each_subspace_of_dim(n, cd, [&](const Subspace& C) {
            if (!C.contains_subspace(D)) return;
            const std::vector<word> celems = C.elements();
            std::vector<word> chosen(k);
            // Ordered tuples of coset representatives independent modulo D:
            // each one picks an isomorphism A/B -> C/D exactly once.
            auto rec = [&](auto&& self, int pos, const Subspace& span) -> void {
              if (pos == k) {
                std::vector<std::pair<word, word>> rows;
                for (word bb : B.basis()) keyed_insert(rows, bb, 0, nullptr);
                for (int i = 0; i < k; ++i) keyed_insert(rows, xreps[i], chosen[i], nullptr);
                std::vector<word> phi;
                phi.reserve(A.basis().size());
                for (word av : A.basis()) phi.push_back(D.reduce(keyed_apply(rows, av)));
                fn(GoursatTriple(n, A, B, C, D, std::move(phi)));
                return;
              }
              for (word cv : celems) {
                if (cv != D.reduce(cv) || span.contains(cv)) continue;
                chosen[pos] = cv;
                Subspace next = span;
                next.insert(cv);
                self(self, pos + 1, next);
              }
            };
            rec(rec, 0, D);
          });
        });
      }
    }
  }
}

}  // namespace fpt
