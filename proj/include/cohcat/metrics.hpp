#pragma once

// Distances, divergences and entropies. All logarithms are base 2.

#include <limits>

#include "cohcat/states.hpp"

namespace cohcat {

/// A divergence in bits. finite == false encodes +infinity (a support
/// violation); value is then +inf as well.
struct DivergenceValue {
  double value = 0.0;
  bool finite = true;

  static DivergenceValue infinite() { return {std::numeric_limits<double>::infinity(), false}; }
};

/// Tr sqrt(sqrt(a) b sqrt(a)), in [0, 1]. Pure/pure, pure/mixed,
/// classical/classical and isotropic pairs use closed forms; everything
/// else goes through the dense nuclear norm ||sqrt(a) sqrt(b)||_1.
double fidelity(const State& a, const State& b);

/// sqrt(1 - F^2).
double purified_distance(const State& a, const State& b);

/// (1/2) ||a - b||_1.
double trace_distance(const State& a, const State& b);

/// min { log lambda : lambda sigma >= rho }.
DivergenceValue d_max(const State& rho, const State& sigma);

/// -log F(rho, sigma)^2.
DivergenceValue d_min(const State& rho, const State& sigma);

/// Sandwiched Renyi divergence of order alpha (alpha > 0, alpha != 1),
/// evaluated on sigma's support.
DivergenceValue sandwiched_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

/// sign(alpha)/(1-alpha) log sum_i p_i^alpha with the limits
///   alpha = 0   -> log |supp p|        (the alpha -> 0+ limit)
///   alpha = 1   -> Shannon entropy
///   alpha = +inf -> -log max p
///   alpha = -inf -> log min p
/// For alpha < 0 and p with a zero entry the sum diverges and -inf is
/// returned.
double renyi_entropy(const ProbabilityVector& p, double alpha);

/// Closed form of the unsmoothed min-entropy of coherence for a pure state:
/// -log max_i phi_i^2.
double c_min_zero(const AmplitudeVector& phi);

}  // namespace cohcat
