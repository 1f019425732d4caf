#pragma once

// Majorization, trumping (catalytic majorization) and the pure-state
// distillation rates with and without a perfect catalyst.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cohcat/states.hpp"

namespace cohcat {

/// Pads the shorter vector with zeros so both have the same length. Every
/// comparison in this module goes through here.
std::pair<std::vector<double>, std::vector<double>> pad_to_common(const ProbabilityVector& p,
                                                                  const ProbabilityVector& q);

/// p majorizes q: every prefix sum of p sorted non-increasingly is at least
/// the matching prefix sum of q (tolerance 1e-12).
bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q);

/// Orders at which Renyi entropies are compared. Positive points are
/// log-spaced on [lo, hi]; the limits alpha in {0+, 1, +inf} are always
/// added, and the mirrored negative branch plus -inf when it applies.
struct AlphaGrid {
  std::size_t points = 512;
  double lo = 1e-4;
  double hi = 1e4;
  double boundary_tolerance = 1e-9;

  std::vector<double> positive_points() const;
};

enum class Verdict { yes, no, boundary };

struct TrumpingVerdict {
  Verdict verdict = Verdict::no;
  std::optional<double> witness_alpha;  // set when verdict == no
  double min_gap = 0.0;                 // smallest S_a(p) - S_a(q) found
  std::size_t checked_alphas = 0;
};

/// Decides whether p is trumped into q (p (x) w < q (x) w for some catalyst
/// w) through the strict Renyi-entropy criterion S_a(p) > S_a(q) for all a.
///
/// Hypotheses (HypothesisViolation otherwise): p has no zero entries after
/// padding, and p sorted differs from q sorted. If q has a zero entry only
/// a > 0 is checked. The verdict is "no" at the first order where the gap
/// is <= -tolerance, "boundary" if the smallest gap found (after a local
/// Brent refinement around the grid minimum) is within tolerance of zero,
/// and "yes" otherwise. At a = 0 with equal supports, the comparison uses
/// the first-order term sum_i log p_i, since both entropies tend to log n.
TrumpingVerdict trumps(const ProbabilityVector& p, const ProbabilityVector& q, const AlphaGrid& grid = {});

/// |phi> -> |psi> by IO/SIO iff dephase(phi) is majorized by dephase(psi).
bool pure_convertible(const AmplitudeVector& phi, const AmplitudeVector& psi);

/// log2 floor(1 / max_i phi_i^2), the zero-error rate with or without a
/// perfect catalyst.
double exact_distill_pure(const AmplitudeVector& phi);

struct CatalyticMaxN {
  std::size_t n = 1;
  /// phi is maximally coherent on its support; n is then its support size,
  /// outside the strict-inequality regime of the trumping criterion.
  bool boundary = false;
};

/// Largest N with dephase(phi) trumped into Psi_N, from the closed form
/// max_i phi_i^2 <= 1/N.
CatalyticMaxN catalytic_max_n(const AmplitudeVector& phi);

/// Same quantity found by running trumps() against Psi_N for N = r-1 .. 1
/// (phi restricted to its support of size r). Used for cross-validation.
std::size_t catalytic_max_n_by_trumping(const AmplitudeVector& phi, const AlphaGrid& grid = {});

/// The smoothed target Psi*: coefficients [1/N + eps (N-1 times),
/// 1/N - (N-1) eps, 0 ... ] of length r. Requires 1 <= N <= r and
/// r (r-1) eps <= 1.
AmplitudeVector construct_psi_star(std::size_t n_target, std::size_t r, double epsilon);

/// Pure-smoothing distillation rate without catalyst at smoothing eps:
/// the largest log2 N (N <= support size) for which some pure target within
/// purified distance eps of Psi_N majorizes dephase(phi). For each N the
/// flattest majorizing target (concave majorant of the prefix sums) is tested.
double pure_smoothed_rate(const AmplitudeVector& phi, double epsilon);

/// (lower, upper) bracket of the perfect-catalyst rate under pure smoothing:
/// pure_smoothed_rate at eps and at sqrt(r (r-1) eps). Requires
/// r (r-1) eps <= 1; r = 1 gives (0, 0).
std::pair<double, double> smoothed_pc_bounds(const AmplitudeVector& phi, double epsilon);

}  // namespace cohcat
