#include "cohcat/majorization.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cohcat/error.hpp"
#include "cohcat/metrics.hpp"

namespace cohcat {

namespace {

constexpr double kPrefixTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

bool prefix_dominates(const std::vector<double>& big, const std::vector<double>& small) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t k = 0; k < big.size(); ++k) {
    a += big[k];
    b += small[k];
    if (a < b - kPrefixTolerance) return false;
  }
  return true;
}

// floor(x), snapping to round(x) when within 1e-12 relative.
std::size_t snapped_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, x)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::floor(x));
}

// Positive entries of dephase(phi), sorted non-increasingly.
std::vector<double> support_profile(const AmplitudeVector& phi) {
  std::vector<double> p;
  for (double a : phi.amps())
    if (a > 0.0) p.push_back(a * a);
  return sorted_desc(std::move(p));
}

bool uniform_on_support(const std::vector<double>& profile) {
  return profile.front() * static_cast<double>(profile.size()) <= 1.0 + 1e-12;
}

std::vector<double> uniform_padded(std::size_t n, std::size_t length) {
  std::vector<double> q(length, 0.0);
  std::fill_n(q.begin(), n, 1.0 / static_cast<double>(n));
  return q;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> pad_to_common(const ProbabilityVector& p,
                                                                  const ProbabilityVector& q) {
  std::vector<double> a(p.probs().begin(), p.probs().end());
  std::vector<double> b(q.probs().begin(), q.probs().end());
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  return {std::move(a), std::move(b)};
}

bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q) {
  auto [a, b] = pad_to_common(p, q);
  return prefix_dominates(sorted_desc(std::move(a)), sorted_desc(std::move(b)));
}

std::vector<double> AlphaGrid::positive_points() const {
  if (points < 2 || !(lo > 0.0) || !(hi > lo)) throw InvalidParameter("alpha grid needs >= 2 points on 0 < lo < hi");
  std::vector<double> out(points);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return out;
}

TrumpingVerdict trumps(const ProbabilityVector& p_in, const ProbabilityVector& q_in, const AlphaGrid& grid) {
  auto [pv, qv] = pad_to_common(p_in, q_in);
  if (std::any_of(pv.begin(), pv.end(), [](double x) { return x <= 0.0; })) {
    throw HypothesisViolation("trumps: p must have all entries positive");
  }
  {
    const auto ps = sorted_desc(pv);
    const auto qs = sorted_desc(qv);
    bool same = true;
    for (std::size_t i = 0; i < ps.size() && same; ++i) same = std::abs(ps[i] - qs[i]) <= kPrefixTolerance;
    if (same) throw HypothesisViolation("trumps: p and q coincide up to permutation (p sorted == q sorted)");
  }
  const ProbabilityVector p(pv);
  const ProbabilityVector q(qv);
  const bool q_has_zero = q.support_size() < q.dim();
  const double tol = grid.boundary_tolerance;

  auto gap = [&](double alpha) { return renyi_entropy(p, alpha) - renyi_entropy(q, alpha); };

  TrumpingVerdict out;
  out.min_gap = kInf;

  // Records one evaluation; returns true when it is a violation.
  auto record = [&](double alpha, double g) {
    ++out.checked_alphas;
    out.min_gap = std::min(out.min_gap, g);
    if (g <= -tol) {
      out.verdict = Verdict::no;
      out.witness_alpha = alpha;
      return true;
    }
    return false;
  };

  // Limits first: +inf, 1, 0.
  if (record(kInf, gap(kInf))) return out;
  if (record(1.0, gap(1.0))) return out;
  double zero_gap = 0.0;
  if (q_has_zero) {
    zero_gap = gap(0.0);
  } else {
    // Equal full supports: both S_a -> log n as a -> 0 and the sign of the
    // gap on either side is that of mean(log p) - mean(log q).
    double burg = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) burg += std::log2(pv[i]) - std::log2(qv[i]);
    zero_gap = burg / static_cast<double>(pv.size());
  }
  if (record(0.0, zero_gap)) return out;

  // Grid branches, each refined around its minimum.
  const auto positive = grid.positive_points();
  std::vector<std::vector<double>> branches{positive};
  if (!q_has_zero) {
    std::vector<double> negative(positive.size());
    std::transform(positive.begin(), positive.end(), negative.begin(), [](double a) { return -a; });
    branches.push_back(std::move(negative));
    if (record(-kInf, gap(-kInf))) return out;
  }

  for (const auto& alphas : branches) {
    std::size_t arg = 0;
    double best = kInf;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double g = gap(alphas[i]);
      if (record(alphas[i], g)) return out;
      if (g < best) {
        best = g;
        arg = i;
      }
    }
    if (arg == 0 || arg + 1 == alphas.size()) continue;
    // Brent search in log|alpha| between the neighbours of the grid minimum.
    const double sign = alphas[arg] > 0.0 ? 1.0 : -1.0;
    const double lo = std::log(std::abs(alphas[arg - 1]));
    const double hi = std::log(std::abs(alphas[arg + 1]));
    const auto [x, g] = boost::math::tools::brent_find_minima(
        [&](double lx) { return gap(sign * std::exp(lx)); }, std::min(lo, hi), std::max(lo, hi), 40);
    if (record(sign * std::exp(x), g)) return out;
  }

  out.verdict = out.min_gap <= tol ? Verdict::boundary : Verdict::yes;
  return out;
}

bool pure_convertible(const AmplitudeVector& phi, const AmplitudeVector& psi) {
  return majorizes(dephase(psi), dephase(phi));
}

double exact_distill_pure(const AmplitudeVector& phi) {
  const double top = *std::max_element(phi.amps().begin(), phi.amps().end());
  return std::log2(static_cast<double>(snapped_floor(1.0 / (top * top))));
}

CatalyticMaxN catalytic_max_n(const AmplitudeVector& phi) {
  const auto profile = support_profile(phi);
  if (profile.size() <= 1) return {1, false};
  if (uniform_on_support(profile)) return {profile.size(), true};
  return {std::min(snapped_floor(1.0 / profile.front()), profile.size() - 1), false};
}

std::size_t catalytic_max_n_by_trumping(const AmplitudeVector& phi, const AlphaGrid& grid) {
  const auto profile = support_profile(phi);
  const std::size_t r = profile.size();
  if (r <= 1) return 1;
  if (uniform_on_support(profile)) return r;
  const ProbabilityVector p(profile);
  for (std::size_t n = r - 1; n >= 2; --n) {
    const auto v = trumps(p, ProbabilityVector(uniform_padded(n, r)), grid);
    if (v.verdict != Verdict::no) return n;
  }
  return 1;
}

AmplitudeVector construct_psi_star(std::size_t n_target, std::size_t r, double epsilon) {
  if (n_target == 0 || n_target > r) throw InvalidParameter("construct_psi_star: need 1 <= N <= r");
  if (!(epsilon >= 0.0)) throw InvalidParameter("construct_psi_star: epsilon must be non-negative");
  const double rr = static_cast<double>(r);
  if (rr * (rr - 1.0) * epsilon > 1.0 + 1e-12) {
    throw PreconditionViolation("construct_psi_star: requires r (r-1) eps <= 1");
  }
  const double n = static_cast<double>(n_target);
  std::vector<double> amps(r, 0.0);
  for (std::size_t i = 0; i + 1 < n_target; ++i) amps[i] = std::sqrt(1.0 / n + epsilon);
  amps[n_target - 1] = std::sqrt(std::max(0.0, 1.0 / n - (n - 1.0) * epsilon));
  return AmplitudeVector(std::move(amps));
}

namespace {

// 1 - F^2 <= eps^2, with slack for F == 1 rounding.
bool within(double fidelity, double epsilon) {
  return 1.0 - fidelity * fidelity <= epsilon * epsilon + 1e-12;
}

// Least-majorized N-entry vector that majorizes the profile: the increments
// of the least concave majorant of (0, 0), (k, Phi_k) for k < N, (N, 1).
// Every other candidate majorizes it, so it has the largest overlap with
// Psi_N.
std::vector<double> flattest_majorizer(const std::vector<double>& profile, std::size_t n) {
  std::vector<double> y(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[k - 1] + (k - 1 < profile.size() ? profile[k - 1] : 0.0);
  y[n] = 1.0;

  std::vector<std::size_t> hull;
  for (std::size_t x = 0; x <= n; ++x) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      if ((y[b] - y[a]) * static_cast<double>(x - a) <= (y[x] - y[a]) * static_cast<double>(b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(x);
  }

  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const std::size_t a = hull[i];
    const std::size_t b = hull[i + 1];
    const double slope = (y[b] - y[a]) / static_cast<double>(b - a);
    for (std::size_t k = a; k < b; ++k) out[k] = slope;
  }
  return out;
}

}  // namespace

double pure_smoothed_rate(const AmplitudeVector& phi, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidParameter("pure_smoothed_rate: epsilon must be non-negative");
  const auto profile = support_profile(phi);
  const std::size_t r = profile.size();
  if (r <= 1) return 0.0;

  for (std::size_t n = r; n >= 2; --n) {
    double f = 0.0;
    for (double x : flattest_majorizer(profile, n)) f += std::sqrt(x);
    if (within(f / std::sqrt(static_cast<double>(n)), epsilon)) return std::log2(static_cast<double>(n));
  }
  return 0.0;
}

std::pair<double, double> smoothed_pc_bounds(const AmplitudeVector& phi, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidParameter("smoothed_pc_bounds: epsilon must be non-negative");
  const std::size_t r = support_profile(phi).size();
  if (r <= 1) return {0.0, 0.0};
  const double rr = static_cast<double>(r);
  if (rr * (rr - 1.0) * epsilon > 1.0 + 1e-12) {
    throw PreconditionViolation("smoothed_pc_bounds: requires r (r-1) eps <= 1");
  }
  return {pure_smoothed_rate(phi, epsilon), pure_smoothed_rate(phi, std::sqrt(rr * (rr - 1.0) * epsilon))};
}

}  // namespace cohcat
