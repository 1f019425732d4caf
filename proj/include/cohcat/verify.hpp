#pragma once

// Seeded randomized property suites, shared by `cohcat verify` and the test
// binaries. Each check reports how far its inequality came from failing.

#include <cstdint>
#include <string>
#include <vector>

#include "cohcat/states.hpp"

namespace cohcat::verify {

struct CheckResult {
  std::string suite;
  std::string check;
  std::int64_t instances = 0;
  std::int64_t violations = 0;
  /// Largest (value - limit) seen; <= tolerance means the check held.
  double max_excess = -1e300;
  double tolerance = 0.0;

  void observe(double excess);
};

/// Names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs a suite ("metrics", "twirl", "convex-split", "embezzle",
/// "majorization", or "all"). Throws InvalidParameter for unknown names.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed);

/// Average of P rho P^dagger over all n! basis permutations, by enumeration.
Matrix brute_force_twirl(const DensityMatrix& rho);

}  // namespace cohcat::verify
