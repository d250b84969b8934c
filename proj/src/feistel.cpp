#include "fpt/feistel.hpp"

#include <stdexcept>
#include <utility>

#include "fpt/goursat.hpp"

namespace fpt {

GeneratingFunction::GeneratingFunction(ParallelSBox gamma, LinearMap lambda)
    : width_(gamma.layout.width()),
      composed_(true),
      gamma_(std::move(gamma)),
      lambda_(std::move(lambda)) {
  if (lambda_.width() != width_)
    throw std::invalid_argument("linear layer width must match the S-box layer");
  table_.resize(std::size_t{1} << width_);
  for (word x = 0; x < table_.size(); ++x) table_[x] = lambda_.apply(gamma_.apply(x));
}

GeneratingFunction GeneratingFunction::from_table(int width, std::vector<word> table) {
  if (width < 1 || width > kMaxWidth)
    throw std::invalid_argument("generating function width out of range");
  if (std::ssize(table) != (std::ptrdiff_t{1} << width))
    throw std::invalid_argument("generating function table must have 2^n entries");
  for (word y : table) checked_vector(y, width);
  GeneratingFunction f;
  f.width_ = width;
  f.table_ = std::move(table);
  return f;
}

word GeneratingFunction::apply(word x) const { return table_[checked_vector(x, width_)]; }

const ParallelSBox& GeneratingFunction::gamma() const {
  if (!composed_) throw std::invalid_argument("raw-table function has no S-box layer");
  return gamma_;
}

const LinearMap& GeneratingFunction::lambda() const {
  if (!composed_) throw std::invalid_argument("raw-table function has no linear layer");
  return lambda_;
}

word FeistelOperator::apply(word v) const {
  const int n = rho.width();
  checked_vector(v, 2 * n);
  return pack_pair(pair_hi(v, n), pair_lo(v, n) ^ rho.apply(pair_hi(v, n)), n);
}

word FeistelOperator::apply_inverse(word v) const {
  const int n = rho.width();
  checked_vector(v, 2 * n);
  const word y1 = pair_lo(v, n);
  const word y2 = pair_hi(v, n);
  return pack_pair(rho.apply(y1) ^ y2, y1, n);
}

std::vector<word> FeistelOperator::to_table() const {
  std::vector<word> t(std::size_t{1} << pair_width());
  for (word v = 0; v < t.size(); ++v) t[v] = apply(v);
  return t;
}

CipherSpec::CipherSpec(BrickLayout layout_, std::vector<GeneratingFunction> rounds_,
                       KeyMode mode)
    : layout(layout_), rounds(std::move(rounds_)), key_mode(mode) {
  if (rounds.empty()) throw std::invalid_argument("a cipher needs at least one round");
  for (const auto& f : rounds)
    if (f.width() != layout.width())
      throw std::invalid_argument("round width must match the brick layout");
}

namespace {

void check_keys(const CipherSpec& spec, std::span<const word> keys) {
  if (std::ssize(keys) != spec.round_count())
    throw std::invalid_argument("need exactly one round key per round");
  for (word k : keys) checked_vector(k, spec.width());
}

}  // namespace

word encrypt(const CipherSpec& spec, std::span<const word> keys, word p) {
  check_keys(spec, keys);
  const int n = spec.width();
  word v = checked_vector(p, 2 * n);
  for (int i = 0; i < spec.round_count(); ++i) {
    const word x1 = pair_lo(v, n);
    const word x2 = pair_hi(v, n);
    if (spec.key_mode == KeyMode::after_rho)
      v = pack_pair(x2, x1 ^ spec.rounds[i].apply(x2) ^ keys[i], n);
    else
      v = pack_pair(x2, x1 ^ spec.rounds[i].apply(x2 ^ keys[i]), n);
  }
  return v;
}

word decrypt(const CipherSpec& spec, std::span<const word> keys, word c) {
  check_keys(spec, keys);
  const int n = spec.width();
  word v = checked_vector(c, 2 * n);
  for (int i = spec.round_count() - 1; i >= 0; --i) {
    const word y1 = pair_lo(v, n);
    const word y2 = pair_hi(v, n);
    if (spec.key_mode == KeyMode::after_rho)
      v = pack_pair(spec.rounds[i].apply(y1) ^ y2 ^ keys[i], y1, n);
    else
      v = pack_pair(spec.rounds[i].apply(y1 ^ keys[i]) ^ y2, y1, n);
  }
  return v;
}

word classical_round(const ParallelSBox& gamma, const LinearMap& lambda, word key,
                     word x) {
  const int n = gamma.layout.width();
  if (lambda.width() != n)
    throw std::invalid_argument("linear layer width must match the S-box layer");
  checked_vector(key, n);
  return lambda.apply(gamma.apply(checked_vector(x, n))) ^ key;
}

word apply_letters(const CipherSpec& spec, std::span<const WitnessLetter> letters,
                   word v) {
  for (const WitnessLetter& l : letters)
    v = l.inverse ? decrypt(spec, l.keys, v) : encrypt(spec, l.keys, v);
  return v;
}

std::vector<WitnessLetter> translation_witness(const CipherSpec& spec, word h, word k) {
  if (spec.key_mode != KeyMode::after_rho)
    throw std::invalid_argument(
        "translation witnesses exist only for key placement after rho");
  const int n = spec.width();
  checked_vector(h, n);
  checked_vector(k, n);
  const int r = spec.round_count();

  // E_(h,0,...,0) E_0^-1 evaluates to (x1,x2) -> (x1+h, x2) because the first
  // round key commutes forward through the remaining rounds as a left-half
  // translation; dually E_0^-1 E_(0,...,0,k) is (x1,x2) -> (x1, x2+k).
  RoundKeys zero(static_cast<std::size_t>(r), 0);
  RoundKeys first = zero, last = zero;
  first.front() = h;
  last.back() = k;
  std::vector<WitnessLetter> letters{{first, false}, {zero, true}, {zero, true},
                                     {last, false}};

  if (2 * n <= kMaxWidth) {
    const word delta = pack_pair(h, k, n);
    for (word v = 0; v < (word{1} << (2 * n)); ++v)
      if (apply_letters(spec, letters, v) != (v ^ delta))
        throw std::logic_error("translation witness failed pointwise verification");
  }
  return letters;
}

}  // namespace fpt
