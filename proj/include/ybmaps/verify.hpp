#pragma once

// Randomized property suites per map id. Samples are drawn in chunks whose generators
// derive from (seed, chunk index), so results do not depend on the thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "ybmaps/json_io.hpp"
#include "ybmaps/maps.hpp"

namespace ybmaps {

struct VerifyTolerances {
  double yang_baxter = 1e-9;
  double lax = 1e-9;
  double casimir = 1e-9;
  double poisson = 1e-6;
  double invariance = 1e-10;
  double involution = 1e-9;
  /// Samples whose smallest relative denominator falls below this are not admissible.
  double pole_guard = 1e-3;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;   ///< admissible samples evaluated
  std::size_t rejected = 0;  ///< inadmissible samples skipped
  std::size_t failures = 0;  ///< samples above tolerance or raising a numerical error
  bool passed = false;
};

struct VerifyConfig {
  std::string map_id;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  std::size_t poisson_samples = 100;
  VerifyTolerances tol;
  unsigned threads = 0;  ///< 0 picks the hardware concurrency
};

struct VerifyReport {
  std::string map_id;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  VerifyTolerances tol;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult& check(const std::string& name) const;
};

/// Checks: yang_baxter, lax, casimir, poisson; ay adds invariance and involution;
/// case1/case2 add strong_lax_recovery.
VerifyReport verify_map(const VerifyConfig& cfg);

Json tolerances_to_json(const VerifyTolerances& tol);
Json report_to_json(const VerifyReport& report);

}  // namespace ybmaps
