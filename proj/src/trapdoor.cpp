#include "fpt/trapdoor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

#include "fpt/difflayer.hpp"
#include "fpt/partition.hpp"
#include "fpt/sbox.hpp"

namespace fpt {
namespace {

std::vector<std::vector<word>> round_tables(const CipherSpec& spec) {
  std::vector<std::vector<word>> tables;
  tables.reserve(spec.rounds.size());
  for (const auto& f : spec.rounds) tables.push_back(FeistelOperator(f).to_table());
  return tables;
}

std::optional<PartitionChain> chain_through(const std::vector<std::vector<word>>& tables,
                                            int pair_width, const Subspace& u1,
                                            int* failed_round) {
  PartitionChain chain;
  chain.pair_width = pair_width;
  chain.links.push_back(u1);
  Subspace cur = u1;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::optional<Subspace> next = propagate_linear(tables[i], cur);
    if (!next) {
      if (failed_round) *failed_round = static_cast<int>(i) + 1;
      return std::nullopt;
    }
    cur = std::move(*next);
    chain.links.push_back(cur);
    chain.link_verified.push_back(true);
  }
  return chain;
}

Subspace product_subgroup(const Subspace& a, const Subspace& d, int n) {
  Subspace u(2 * n);
  for (word v : a.basis()) u.insert(pack_pair(v, 0, n));
  for (word v : d.basis()) u.insert(pack_pair(0, v, n));
  return u;
}

// Is d -> rho(d) + rho(0) additive modulo `a` on dsub? Necessary for the image
// of the product a x dsub to be a coset of a subgroup again. elements() is
// mask-linear, so checking basis extensions suffices.
bool additive_mod(const std::vector<word>& rho, const Subspace& a,
                  const Subspace& dsub) {
  const std::vector<word> elems = dsub.elements();
  std::vector<word> t(elems.size());
  for (std::size_t m = 0; m < elems.size(); ++m)
    t[m] = a.reduce(rho[elems[m]] ^ rho[0]);
  for (int i = 0; i < dsub.dim(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < elems.size(); ++m)
      if (t[m ^ bit] != (t[m] ^ t[bit])) return false;
  }
  return true;
}

// Is x -> rho(x) + rho(0) additive on the subspace s?
bool additive_on(const std::vector<word>& rho, const Subspace& s) {
  const std::vector<word> elems = s.elements();
  std::vector<word> t(elems.size());
  for (std::size_t m = 0; m < elems.size(); ++m) t[m] = rho[elems[m]] ^ rho[0];
  for (int i = 0; i < s.dim(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < elems.size(); ++m)
      if (t[m ^ bit] != (t[m] ^ t[bit])) return false;
  }
  return true;
}

void sort_chains(std::vector<PartitionChain>& chains) {
  std::sort(chains.begin(), chains.end(),
            [](const PartitionChain& x, const PartitionChain& y) {
              return x.links < y.links;
            });
}

}  // namespace

bool PartitionChain::verified() const {
  if (links.empty() || link_verified.size() + 1 != links.size()) return false;
  for (bool f : link_verified)
    if (!f) return false;
  for (const Subspace& u : links)
    if (!u.proper_nontrivial()) return false;
  return true;
}

ChainSearchOutcome propagate_chain(const CipherSpec& spec, const Subspace& u1) {
  const int n = spec.width();
  if (u1.width() != 2 * n)
    throw std::invalid_argument("seed subgroup must live in V x V");
  if (!u1.proper_nontrivial())
    throw std::invalid_argument("seed subgroup must be proper and non-trivial");
  ChainSearchOutcome out;
  out.chain = chain_through(round_tables(spec), 2 * n, u1, &out.failed_round);
  return out;
}

std::pair<PairSubgroup, PairSubgroup> lift_partition(const Subspace& u1,
                                                     const Subspace& u2,
                                                     const GeneratingFunction& rho) {
  const int n = rho.width();
  if (u1.width() != n || u2.width() != n)
    throw std::invalid_argument("subspace widths must match the generating function");
  const std::optional<Subspace> img = propagate_linear(rho.table(), u1);
  if (!img || !(*img == u2))
    throw std::invalid_argument("rho does not carry L(U1) onto L(U2)");

  PairSubgroup lifted1(2 * n);
  for (word v : u2.basis()) lifted1.insert(pack_pair(v, 0, n));
  for (word v : u1.basis()) lifted1.insert(pack_pair(0, v, n));
  PairSubgroup lifted2(2 * n);
  for (word v : u1.basis()) lifted2.insert(pack_pair(v, 0, n));
  for (word v : u2.basis()) lifted2.insert(pack_pair(0, v, n));

  if (2 * n <= kMaxWidth) {
    // (lifted1 + (v,v')) rho-bar = lifted2 + (v', v + rho(v')) for every offset
    const std::vector<word> elems = lifted1.elements();
    for (word off = 0; off < (word{1} << (2 * n)); ++off) {
      const word target = feistel_point(rho.table(), off, n);
      for (word e : elems)
        if (!lifted2.contains(feistel_point(rho.table(), e ^ off, n) ^ target))
          throw std::logic_error("converse lift failed coset verification");
    }
  }
  return {lifted1, lifted2};
}

SpnReduction reduce_to_spn(const GeneratingFunction& rho1,
                           const GeneratingFunction& rho2, const PairSubgroup& us1,
                           const PairSubgroup& us2) {
  const int n = rho1.width();
  if (rho2.width() != n)
    throw std::invalid_argument("generating functions must share a width");
  if (us1.width() != 2 * n || us2.width() != 2 * n)
    throw std::invalid_argument("subgroups must live in V x V");

  const std::optional<Subspace> i1 =
      propagate_linear(FeistelOperator(rho1).to_table(), us1);
  if (!i1 || !(*i1 == us2))
    throw std::invalid_argument("hypothesis fails: U1 does not propagate onto U2");
  const std::optional<Subspace> i2 =
      propagate_linear(FeistelOperator(rho2).to_table(), us2);
  if (!i2 || !(*i2 == us1))
    throw std::invalid_argument("hypothesis fails: U2 does not propagate onto U1");
  if (is_affine_table(rho1.table()) || is_affine_table(rho2.table()))
    throw std::invalid_argument("reduction requires non-affine generating functions");

  const GoursatTriple t1 = decompose(us1, n);
  const GoursatTriple t2 = decompose(us2, n);
  SpnReduction out{Subspace(n), Subspace(n), Subspace(n), Subspace(n), false};
  if (t1.d.proper_nontrivial() && t2.d.proper_nontrivial()) {
    out = {t1.d, t2.d, t2.d, t1.d, true};
  } else if (t2.a.proper_nontrivial() && t1.a.proper_nontrivial()) {
    out = {t2.a, t1.a, t1.a, t2.a, false};
  } else {
    throw std::invalid_argument(
        "Goursat parts are degenerate: no proper non-trivial SPN pair");
  }

  const auto carries = [n](const std::vector<word>& rho, const Subspace& u,
                           const Subspace& w) {
    if (u.dim() != w.dim()) return false;
    const std::vector<word> elems = u.elements();
    for (word v = 0; v < (word{1} << n); ++v) {
      const word base = rho[v];
      for (word e : elems)
        if (!w.contains(rho[v ^ e] ^ base)) return false;
    }
    return true;
  };
  if (!carries(rho1.table(), out.u1, out.w1) || !carries(rho2.table(), out.u2, out.w2))
    throw std::logic_error("SPN reduction failed coset verification");
  return out;
}

std::vector<PartitionChain> search_trapdoor_chains(const CipherSpec& spec,
                                                   SearchFamily family, int jobs) {
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  const int n = spec.width();
  const std::vector<std::vector<word>> tables = round_tables(spec);
  std::vector<PartitionChain> out;

  const auto try_seed = [&](const Subspace& u1, std::vector<PartitionChain>& sink) {
    if (!u1.proper_nontrivial()) return;
    if (auto chain = chain_through(tables, 2 * n, u1, nullptr))
      sink.push_back(std::move(*chain));
  };

  switch (family) {
    case SearchFamily::exhaustive: {
      if (2 * n > 8)
        throw std::invalid_argument("exhaustive family is limited to 2n <= 8");
      for_each_subspace(2 * n, [&](const Subspace& u) { try_seed(u, out); });
      break;
    }
    case SearchFamily::product: {
      if (n > 6) throw std::invalid_argument("product family is limited to n <= 6");
      const std::vector<Subspace> all = enumerate_subspaces(n);
      const std::vector<word>& rho1 = spec.rounds.front().table();
      std::vector<std::vector<PartitionChain>> found(jobs);
      std::vector<std::thread> workers;
      for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t ai = w; ai < all.size(); ai += jobs) {
            const Subspace& a = all[ai];
            for (const Subspace& d : all) {
              const int dim = a.dim() + d.dim();
              if (dim == 0 || dim == 2 * n) continue;
              if (!additive_mod(rho1, a, d)) continue;
              try_seed(product_subgroup(a, d, n), found[w]);
            }
          }
        });
      }
      for (auto& t : workers) t.join();
      for (auto& part : found)
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      break;
    }
    case SearchFamily::graph: {
      if (n > 8) throw std::invalid_argument("graph family is limited to n <= 8");
      const std::vector<Subspace> all = enumerate_subspaces(n);
      const std::vector<word>& rho1 = spec.rounds.front().table();
      std::vector<std::vector<PartitionChain>> found(jobs);
      std::vector<std::thread> workers;
      for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t si = w; si < all.size(); si += jobs) {
            const Subspace& s = all[si];
            if (s.dim() == 0 || !additive_on(rho1, s)) continue;
            Subspace diag(2 * n);
            for (word v : s.basis()) diag.insert(pack_pair(v, v, n));
            try_seed(diag, found[w]);
          }
        });
      }
      for (auto& t : workers) t.join();
      for (auto& part : found)
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      break;
    }
    case SearchFamily::wall_lifted: {
      if (spec.layout.b < 2) throw std::invalid_argument("walls require b >= 2");
      for (word members = 1; members + 1 < (word{1} << spec.layout.b); ++members) {
        const Subspace u = wall_subspace(spec.layout, members);
        if (const auto w = propagate_linear(spec.rounds.front().table(), u)) {
          const auto lifted = lift_partition(u, *w, spec.rounds.front());
          try_seed(lifted.first, out);
        }
      }
      break;
    }
  }
  sort_chains(out);
  return out;
}

ChainConditions check_chain_conditions(const CipherSpec& spec,
                                       const PartitionChain& chain) {
  const int n = spec.width();
  const int r = spec.round_count();
  if (static_cast<int>(chain.links.size()) != r + 1)
    throw std::invalid_argument("chain must have one link per round boundary");
  if (chain.pair_width != 2 * n)
    throw std::invalid_argument("chain width does not match the cipher");
  const std::vector<std::vector<word>> tables = round_tables(spec);
  for (int i = 0; i < r; ++i) {
    const auto img = propagate_linear(tables[i], chain.links[i]);
    if (!img || !(*img == chain.links[i + 1]))
      throw std::invalid_argument("chain does not propagate through the cipher");
  }

  std::vector<GoursatTriple> parts;
  parts.reserve(chain.links.size());
  for (const Subspace& u : chain.links) parts.push_back(decompose(u, n));

  ChainConditions v;
  // propagation images are unique, so a backward step equals a two-link repeat
  for (int i = 1; i <= r - 1 && v.two_cycle_at == 0; ++i)
    if (chain.links[i + 1] == chain.links[i - 1]) v.two_cycle_at = i;
  for (int i = 1; i <= r - 1 && v.products_at == 0; ++i)
    if (parts[i - 1].is_product() && parts[i].is_product() &&
        parts[i + 1].is_product())
      v.products_at = i;
  for (int i = 1; i <= r && v.trivial_d_at == 0; ++i)
    if (parts[i - 1].d.is_trivial() && parts[i].d.is_trivial()) v.trivial_d_at = i;
  for (int i = 1; i <= r && v.trivial_a_at == 0; ++i)
    if (parts[i - 1].a.is_trivial() && parts[i].a.is_trivial()) v.trivial_a_at = i;
  return v;
}

ExclusionReport check_exclusion_theorem(const CipherSpec& spec, TheoremVariant variant,
                                        const std::vector<SearchFamily>& families,
                                        int jobs) {
  ExclusionReport report;
  report.variant = variant;
  report.families = families;
  const int s = spec.layout.s;

  bool structural_ok = true;
  int lo_all = 1, hi_all = s;
  for (const GeneratingFunction& f : spec.rounds) {
    RoundHypotheses rh;
    rh.composed = f.composed();
    rh.fixes_zero = f.fixes_zero();
    if (rh.composed) {
      try {
        rh.strongly_proper = check_properness(f.lambda(), spec.layout).strongly_proper;
      } catch (const std::invalid_argument&) {
        rh.strongly_proper = false;
      }
      for (const SBox& box : f.gamma().boxes) {
        BoxHypotheses bh;
        const UniformityReport u = differential_uniformity(box);
        bh.delta = u.delta;
        bh.apn = u.apn;
        bh.anti_order = anti_invariance_order(box).order;
        if (variant == TheoremVariant::standard) {
          bh.delta_lo = std::bit_width(bh.delta - 1);  // 2^lo >= delta
          bh.delta_hi = bh.anti_order + 1;
        } else {
          bh.delta_lo = s + 1;
          for (int e = 1; e <= s; ++e)
            if (is_weakly_uniform(box, 1 << e)) {
              bh.delta_lo = e;
              break;
            }
          bh.delta_hi = bh.anti_order;
        }
        lo_all = std::max(lo_all, bh.delta_lo);
        hi_all = std::min(hi_all, bh.delta_hi);
        rh.boxes.push_back(bh);
      }
    } else {
      structural_ok = false;
    }
    if (!rh.fixes_zero || (rh.composed && !rh.strongly_proper)) structural_ok = false;
    report.rounds.push_back(std::move(rh));
  }
  report.best_delta = lo_all <= hi_all ? lo_all : 0;
  report.hypotheses_pass = structural_ok && report.best_delta > 0;

  for (SearchFamily fam : families) {
    std::vector<PartitionChain> chains = search_trapdoor_chains(spec, fam, jobs);
    report.chains.insert(report.chains.end(), std::make_move_iterator(chains.begin()),
                         std::make_move_iterator(chains.end()));
  }
  sort_chains(report.chains);
  report.chains.erase(std::unique(report.chains.begin(), report.chains.end(),
                                  [](const PartitionChain& x, const PartitionChain& y) {
                                    return x.links == y.links;
                                  }),
                      report.chains.end());

  bool excluded_shape = false;
  for (const PartitionChain& chain : report.chains) {
    report.verdicts.push_back(check_chain_conditions(spec, chain));
    if (report.verdicts.back().any()) excluded_shape = true;
  }
  report.pass = report.hypotheses_pass && !excluded_shape;
  return report;
}

namespace {

bool has_linear_structure(const std::vector<word>& t) {
  for (word d = 1; d < t.size(); ++d) {
    const word c = t[d] ^ t[0];
    bool constant = true;
    for (word x = 1; x < t.size() && constant; ++x)
      constant = (t[x ^ d] ^ t[x]) == c;
    if (constant) return true;
  }
  return false;
}

// A constant-derivative direction would hand the quotient cipher a key
// equivalence on top of the planted chain, so resample until none is left.
std::vector<word> random_zero_fixing_perm(std::uint64_t& state, int s) {
  std::vector<word> t(std::size_t{1} << s);
  do {
    for (word i = 0; i < t.size(); ++i) t[i] = i;
    for (word i = static_cast<word>(t.size()) - 1; i >= 2; --i) {
      const word j = 1 + rand_below(state, i);
      std::swap(t[i], t[j]);
    }
  } while (has_linear_structure(t));
  return t;
}

LinearMap brick_rotation(const BrickLayout& layout, int dir) {
  const int n = layout.width();
  std::vector<word> rows(n);
  for (int j = 0; j < layout.b; ++j)
    for (int t = 0; t < layout.s; ++t)
      rows[j * layout.s + t] =
          word{1} << (((j + dir + layout.b) % layout.b) * layout.s + t);
  return LinearMap(n, rows);
}

}  // namespace

WeakCipher build_weak_cipher(int s, int b, int r, std::uint64_t seed, bool apn_boxes) {
  if (b < 2) throw std::invalid_argument("walls require b >= 2");
  if (s < 3) throw std::invalid_argument("bricks need s >= 3");
  if (r < 2) throw std::invalid_argument("need r >= 2 rounds");
  if (apn_boxes && s != 3)
    throw std::invalid_argument("the APN seeding is wired for s = 3 only");
  const BrickLayout layout(s, b);
  const int n = layout.width();

  std::uint64_t state = seed ? seed : 1;
  std::vector<GeneratingFunction> rounds;
  for (int i = 0; i < r; ++i) {
    std::vector<SBox> boxes;
    for (int j = 0; j < b; ++j)
      boxes.push_back(apn_boxes ? cube_box()
                                : SBox(s, random_zero_fixing_perm(state, s)));
    rounds.emplace_back(ParallelSBox(layout, std::move(boxes)),
                        brick_rotation(layout, i % 2 == 0 ? 1 : -1));
  }
  CipherSpec spec(layout, std::move(rounds), KeyMode::after_rho);

  // the rotation sends wall 0 to wall 1 and back, so the lifted pair 2-cycles
  const Subspace wall0 = wall_subspace(layout, 0b01);
  const Subspace wall1 = wall_subspace(layout, 0b10);
  PartitionChain chain;
  chain.pair_width = 2 * n;
  for (int i = 0; i <= r; ++i) {
    Subspace link(2 * n);
    const Subspace& lo = i % 2 == 0 ? wall1 : wall0;
    const Subspace& hi = i % 2 == 0 ? wall0 : wall1;
    for (word v : lo.basis()) link.insert(pack_pair(v, 0, n));
    for (word v : hi.basis()) link.insert(pack_pair(0, v, n));
    chain.links.push_back(link);
  }
  chain.link_verified.assign(static_cast<std::size_t>(r), true);

  const ChainSearchOutcome run = propagate_chain(spec, chain.links.front());
  if (!run.chain || run.chain->links != chain.links)
    throw std::logic_error("weak cipher construction lost its wall chain");
  return {std::move(spec), std::move(chain)};
}

CipherSpec strong_demo_spec(int rounds) {
  if (rounds < 1) throw std::invalid_argument("need at least one round");
  const BrickLayout layout(3, 2);
  const LinearMap mixer(6, {9, 18, 36, 17, 34, 28});
  const GeneratingFunction f(ParallelSBox(layout, {cube_box(), cube_box()}), mixer);
  return CipherSpec(layout, std::vector<GeneratingFunction>(
                                static_cast<std::size_t>(rounds), f));
}

AttackReport distinguish(const PairOracle& oracle, const PartitionChain& chain,
                         long samples, std::uint64_t seed) {
  if (chain.links.empty()) throw std::invalid_argument("empty chain");
  const int pw = chain.pair_width;
  if (pw < 2 || pw >= 32) throw std::invalid_argument("pair width out of range");
  const Subspace& u1 = chain.links.front();
  const Subspace& ur = chain.links.back();
  if (!u1.proper_nontrivial() || !ur.proper_nontrivial())
    throw std::invalid_argument("degenerate chain");
  if (samples < 1) throw std::invalid_argument("need at least one sample");

  const std::vector<word> elems = u1.elements();
  std::uint64_t state = seed ? seed : 1;
  long hits = 0;
  for (long t = 0; t < samples; ++t) {
    const word p = rand_below(state, word{1} << pw);
    const word u = elems[1 + rand_below(state, static_cast<word>(elems.size() - 1))];
    if (ur.contains(oracle(p) ^ oracle(p ^ u))) ++hits;
  }
  AttackReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.hits = hits;
  rep.hit_rate = static_cast<double>(hits) / static_cast<double>(samples);
  rep.baseline_expected =
      (static_cast<double>(word{1} << ur.dim()) - 1.0) /
      (static_cast<double>(std::uint64_t{1} << pw) - 1.0);
  return rep;
}

AttackReport recover_key_coset(const CipherSpec& spec, const RoundKeys& keys_hidden,
                               const PartitionChain& chain, std::uint64_t seed,
                               int plaintext_labels) {
  if (spec.key_mode != KeyMode::after_rho)
    throw std::invalid_argument("recovery assumes key placement after rho");
  const int n = spec.width();
  const int r = spec.round_count();
  if (chain.pair_width != 2 * n ||
      static_cast<int>(chain.links.size()) != r + 1)
    throw std::invalid_argument("chain does not match the cipher");
  if (!chain.verified()) throw std::invalid_argument("chain not verified");
  if (static_cast<int>(keys_hidden.size()) != r)
    throw std::invalid_argument("need one hidden key per round");
  if (plaintext_labels < 1)
    throw std::invalid_argument("need at least one plaintext label");
  if (2 * n > kMaxWidth)
    throw std::invalid_argument("key recovery enumerates pair labels; needs 2n <= 16");

  const std::vector<std::vector<word>> tables = round_tables(spec);
  for (int i = 0; i < r; ++i) {
    const auto img = propagate_linear(tables[i], chain.links[i]);
    if (!img || !(*img == chain.links[i + 1]))
      throw std::invalid_argument("chain does not propagate through the cipher");
  }

  // key alphabet per round: the key acts on the U_{i+1} coset only through its
  // class modulo the right slice D_{i+1}
  std::vector<std::vector<word>> kappas(r);
  std::vector<Subspace> dslices;
  std::uint64_t tuples = 1;
  for (int i = 0; i < r; ++i) {
    const Subspace d = decompose(chain.links[i + 1], n).d;
    for (word v = 0; v < (word{1} << n); ++v)
      if (d.reduce(v) == v) kappas[i].push_back(v);
    dslices.push_back(d);
    tuples *= kappas[i].size();
    if (tuples > (std::uint64_t{1} << 20))
      throw std::invalid_argument("quotient key space too large to exhaust");
  }

  // chosen plaintexts: distinct U_1 coset labels, seed-shuffled
  std::vector<word> labels;
  for (word v = 0; v < (word{1} << (2 * n)); ++v)
    if (chain.links[0].reduce(v) == v) labels.push_back(v);
  std::uint64_t state = seed ? seed : 1;
  const std::size_t use =
      std::min(labels.size(), static_cast<std::size_t>(plaintext_labels));
  for (std::size_t i = 0; i < use; ++i) {
    const word j = rand_below(state, static_cast<word>(labels.size() - i));
    std::swap(labels[i], labels[i + j]);
  }
  labels.resize(use);
  std::vector<word> observed;
  observed.reserve(labels.size());
  for (word p : labels)
    observed.push_back(chain.links[r].reduce(encrypt(spec, keys_hidden, p)));

  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  std::vector<word> accepted;
  for (;;) {
    bool ok = true;
    for (std::size_t pi = 0; pi < labels.size() && ok; ++pi) {
      word l = labels[pi];
      for (int i = 0; i < r; ++i)
        l = chain.links[i + 1].reduce(tables[i][l] ^
                                      pack_pair(0, kappas[i][idx[i]], n));
      ok = l == observed[pi];
    }
    if (ok) accepted.push_back(kappas[r - 1][idx[r - 1]]);
    int pos = 0;
    while (pos < r && ++idx[pos] == kappas[pos].size()) idx[pos++] = 0;
    if (pos == r) break;
  }
  if (accepted.empty())
    throw std::logic_error("true quotient keys were not accepted by the search");

  std::sort(accepted.begin(), accepted.end());
  accepted.erase(std::unique(accepted.begin(), accepted.end()), accepted.end());
  Subspace amb = dslices.back();
  const word rep0 = accepted.front();
  for (word k : accepted) amb.insert(k ^ rep0);

  AttackReport rep;
  rep.seed = seed;
  rep.samples = static_cast<long>(labels.size());
  rep.key_recovery_ran = true;
  rep.ambiguity = amb;
  rep.recovered_rep = amb.reduce(rep0);
  rep.bits_recovered = n - amb.dim();
  rep.contains_true_key = amb.contains(keys_hidden.back() ^ rep0);
  return rep;
}

}  // namespace fpt
