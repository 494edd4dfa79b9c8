#pragma once

// Self-check suite run by `bp2 verify`: the model's identities and
// invariants evaluated on grids and reduced-size ensembles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bp2 {

/// Deliberate faults used to confirm that checks can fail.
struct VerifyFixture {
  /// Negate the IC integrand seen by the g(lambda) check.
  bool flip_ic_sign = false;
  /// Mean offspring used by the fixed-point check (default 25).
  std::optional<double> branching_m;
};

struct VerifyOptions {
  std::size_t replications = 100;
  std::uint64_t seed = 1;
  VerifyFixture fixture;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace bp2
