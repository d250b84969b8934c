// The Feistel operator, multi-round composition in both key placements, and
// constructive witnesses that pair translations are products of round maps.
#pragma once

#include <span>
#include <vector>

#include "fpt/bitvec.hpp"
#include "fpt/sbox.hpp"

namespace fpt {

// Round generating function: a parallel S-box layer followed by a linear
// layer, or a raw lookup table. Need not be bijective; the Feistel operator
// built from it is a bijection regardless.
class GeneratingFunction {
 public:
  GeneratingFunction() = default;
  GeneratingFunction(ParallelSBox gamma, LinearMap lambda);
  static GeneratingFunction from_table(int width, std::vector<word> table);

  int width() const { return width_; }
  word apply(word x) const;
  const std::vector<word>& table() const { return table_; }
  bool fixes_zero() const { return !table_.empty() && table_[0] == 0; }
  bool composed() const { return composed_; }
  const ParallelSBox& gamma() const;  // throws for raw-table functions
  const LinearMap& lambda() const;    // likewise

 private:
  int width_ = 0;
  bool composed_ = false;
  ParallelSBox gamma_;
  LinearMap lambda_;
  std::vector<word> table_;
};

// (x1, x2) -> (x2, x1 + rho(x2)) on packed pairs, x1 in the low bits.
struct FeistelOperator {
  GeneratingFunction rho;

  explicit FeistelOperator(GeneratingFunction rho_) : rho(std::move(rho_)) {}
  int pair_width() const { return 2 * rho.width(); }
  word apply(word v) const;
  word apply_inverse(word v) const;
  std::vector<word> to_table() const;
};

enum class KeyMode {
  after_rho,   // round = rho-bar, then XOR the key into the right half
  before_rho,  // round = (x2, x1 + rho(x2 + k))
};

struct CipherSpec {
  BrickLayout layout;
  std::vector<GeneratingFunction> rounds;
  KeyMode key_mode = KeyMode::after_rho;

  CipherSpec(BrickLayout layout_, std::vector<GeneratingFunction> rounds_,
             KeyMode mode = KeyMode::after_rho);
  int width() const { return layout.width(); }
  int round_count() const { return static_cast<int>(rounds.size()); }
};

// Long-key model: one independent n-bit key per round.
using RoundKeys = std::vector<word>;

word encrypt(const CipherSpec& spec, std::span<const word> keys, word p);
word decrypt(const CipherSpec& spec, std::span<const word> keys, word c);

// Classical SPN round: x -> lambda(gamma(x)) + k.
word classical_round(const ParallelSBox& gamma, const LinearMap& lambda, word key,
                     word x);

// One encryption map E_K or its inverse.
struct WitnessLetter {
  RoundKeys keys;
  bool inverse = false;
};

// Four letters whose left-to-right evaluation is the translation
// (x1, x2) -> (x1 + h, x2 + k). Requires key placement after rho; verified on
// the full domain before returning (n <= 8).
std::vector<WitnessLetter> translation_witness(const CipherSpec& spec, word h, word k);
word apply_letters(const CipherSpec& spec, std::span<const WitnessLetter> letters,
                   word v);

}  // namespace fpt
