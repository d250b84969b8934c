// Structural verification suites: Goursat round-trips, translation witnesses,
// converse lifts, exhaustive propagation scans, and micro-scale group checks.
// Shared by the command-line front end and the acceptance harness.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fpt {

struct VerifyCheck {
  std::string label;
  long passed = 0;
  long total = 0;

  bool ok() const { return total > 0 && passed == total; }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool ok() const {
    for (const VerifyCheck& c : checks)
      if (!c.ok()) return false;
    return !checks.empty();
  }
};

VerifyReport verify_goursat(std::uint64_t seed = 1);
VerifyReport verify_feistel(std::uint64_t seed = 1);
VerifyReport verify_converse(std::uint64_t seed = 1);
VerifyReport verify_propsub(std::uint64_t seed = 1);
VerifyReport verify_micro_group();

// scope: goursat | feistel | converse | propsub | micro-group | all
VerifyReport run_verify(const std::string& scope, std::uint64_t seed = 1);

}  // namespace fpt
