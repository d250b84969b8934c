// Partition chains through Feistel rounds, the SPN-level reduction and its
// converse lift, chain searches, the exclusion checks behind the analyzer
// verdicts, a deliberately weak reference cipher, and the partition attack.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fpt/bitvec.hpp"
#include "fpt/feistel.hpp"
#include "fpt/goursat.hpp"

namespace fpt {

// U_1 .. U_{r+1} with L(U_i) carried onto L(U_{i+1}) by round i.
struct PartitionChain {
  int pair_width = 0;               // 2n
  std::vector<Subspace> links;
  std::vector<bool> link_verified;  // one flag per round

  bool verified() const;
};

struct ChainSearchOutcome {
  std::optional<PartitionChain> chain;
  int failed_round = 0;  // 1-based first round whose image partition is not linear
};

// Push L(u1) through every round; stops at the first non-linear image.
ChainSearchOutcome propagate_chain(const CipherSpec& spec, const Subspace& u1);

// Converse direction: from L(u1)rho = L(u2) on V build the pair subgroups
// (u2 x u1, u1 x u2) and certify the coset propagation identity for every
// offset (2n <= 16). Throws std::invalid_argument when the precondition fails.
std::pair<PairSubgroup, PairSubgroup> lift_partition(const Subspace& u1,
                                                     const Subspace& u2,
                                                     const GeneratingFunction& rho);

// SPN-level pairs extracted from a 2-cycle of pair subgroups.
struct SpnReduction {
  Subspace u1, w1, u2, w2;
  bool from_d_slices = false;  // true: D-slice branch, false: A-projection branch
};

// Requires L(us1)rho1-bar = L(us2), L(us2)rho2-bar = L(us1), and both
// generating functions non-affine. The returned pairs satisfy
// (u_i + v)rho_i = w_i + rho_i(v) for every v, checked exhaustively.
SpnReduction reduce_to_spn(const GeneratingFunction& rho1,
                           const GeneratingFunction& rho2, const PairSubgroup& us1,
                           const PairSubgroup& us2);

enum class SearchFamily { exhaustive, product, graph, wall_lifted };

// Sound, explicitly-scoped chain searches. exhaustive: every subgroup seed
// (2n <= 8, provably complete). product: seeds A x D with a first-round
// additivity fast-reject (n <= 6). graph: diagonal seeds over subspaces where
// the first generating function acts additively (n <= 8). wall_lifted: lifts
// of wall pairs propagated by the first round.
std::vector<PartitionChain> search_trapdoor_chains(const CipherSpec& spec,
                                                   SearchFamily family, int jobs = 1);

enum class TheoremVariant { standard, weak_uniformity };

struct BoxHypotheses {
  word delta = 0;  // DDT maximum
  bool apn = false;
  int anti_order = 0;
  // admissible exponent interval for the uniformity/anti-invariance tradeoff;
  // empty when lo > hi
  int delta_lo = 1;
  int delta_hi = 0;
};

struct RoundHypotheses {
  bool composed = false;
  bool fixes_zero = false;
  bool strongly_proper = false;
  std::vector<BoxHypotheses> boxes;
};

// Where along a chain each excluded shape shows up (1-based index, 0 = absent).
struct ChainConditions {
  int two_cycle_at = 0;   // L(U_{i+1}) rho-bar_{i+1} = L(U_i)
  int products_at = 0;    // U_i, U_{i+1}, U_{i+2} all products
  int trivial_d_at = 0;   // D_i = D_{i+1} = {0}
  int trivial_a_at = 0;   // A_i = A_{i+1} = {0}
  bool any() const {
    return two_cycle_at || products_at || trivial_d_at || trivial_a_at;
  }
};

ChainConditions check_chain_conditions(const CipherSpec& spec,
                                       const PartitionChain& chain);

struct ExclusionReport {
  TheoremVariant variant = TheoremVariant::standard;
  std::vector<RoundHypotheses> rounds;
  int best_delta = 0;  // smallest admissible exponent, 0 when none exists
  bool hypotheses_pass = false;
  std::vector<SearchFamily> families;
  std::vector<PartitionChain> chains;
  std::vector<ChainConditions> verdicts;  // parallel to chains
  bool pass = false;  // hypotheses hold and no chain satisfies a condition
};

ExclusionReport check_exclusion_theorem(const CipherSpec& spec, TheoremVariant variant,
                                        const std::vector<SearchFamily>& families,
                                        int jobs = 1);

struct WeakCipher {
  CipherSpec spec;
  PartitionChain chain;
};

// Proper-but-not-strongly-proper diffusion (brick rotation, alternating
// direction) with zero-fixing random parallel S-boxes: carries a verified
// two-cycle wall chain. apn_boxes swaps in the cube box (s = 3 only).
WeakCipher build_weak_cipher(int s, int b, int r, std::uint64_t seed,
                             bool apn_boxes = false);

// s = 3, b = 2: cube boxes with a strongly proper mixing layer.
CipherSpec strong_demo_spec(int rounds = 4);

struct AttackReport {
  std::uint64_t seed = 0;
  long samples = 0;
  long hits = 0;
  double hit_rate = 0.0;
  double baseline_expected = 0.0;
  // key-coset recovery
  bool key_recovery_ran = false;
  std::optional<Subspace> ambiguity;  // recovered coset = rep + ambiguity
  word recovered_rep = 0;
  int bits_recovered = 0;
  bool contains_true_key = false;
};

using PairOracle = std::function<word(word)>;

// Chosen-pair distinguisher: fraction of u-offset plaintext pairs whose images
// share a U_{r+1} coset. Exactly 1 on any cipher carrying the chain.
AttackReport distinguish(const PairOracle& oracle, const PartitionChain& chain,
                         long samples, std::uint64_t seed);

// Last-round-key recovery through the quotient cipher on coset labels;
// reports the coset of k_r consistent with the observed ciphertext labels.
AttackReport recover_key_coset(const CipherSpec& spec, const RoundKeys& keys_hidden,
                               const PartitionChain& chain, std::uint64_t seed = 1,
                               int plaintext_labels = 16);

}  // namespace fpt
