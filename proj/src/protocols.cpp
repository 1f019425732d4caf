#include "cohcat/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cohcat/error.hpp"
#include "cohcat/kernels.hpp"
#include "cohcat/metrics.hpp"

namespace cohcat {

namespace {

constexpr double kTwoPow63 = 9223372036854775808.0;
constexpr double kSnap = 1e-9;

void require_epsilon(double epsilon, const char* op) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidParameter(std::string(op) + ": epsilon must be positive");
}

// ceil(x) that first snaps values within kSnap (relative) of an integer.
double snapped_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= kSnap * std::max(1.0, std::abs(x))) return r;
  return std::ceil(x);
}

}  // namespace

BigCount BigCount::from_exact(std::uint64_t n) {
  BigCount c;
  c.exact = n;
  c.value = static_cast<double>(n);
  c.log2 = std::log2(c.value);
  return c;
}

BigCount BigCount::ceil_of_pow2(double log2_x) {
  if (log2_x <= 63.0) {
    const double n = snapped_ceil(std::exp2(log2_x));
    if (n < kTwoPow63) return from_exact(static_cast<std::uint64_t>(n));
  }
  BigCount c;
  c.value = std::exp2(log2_x);
  c.log2 = log2_x;
  return c;
}

ProtocolPlan plan_convex_split(double t, std::size_t n_target, double epsilon) {
  require_epsilon(epsilon, "plan_convex_split");
  if (epsilon > 1.0) throw InvalidParameter("plan_convex_split: epsilon must not exceed 1");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("plan_convex_split: t must lie in [0, 1]");
  if (n_target == 0) throw InvalidDimension("plan_convex_split: target dimension must be positive");

  ProtocolPlan plan;
  plan.n_target = n_target;
  plan.epsilon = epsilon;
  plan.t = t;
  plan.delta = epsilon / 2.0;
  plan.gamma = epsilon / 2.0;

  if (t < epsilon) {
    plan.trivial = true;
    plan.n_registers = BigCount::from_exact(1);
    plan.error_bound = t;
    return plan;
  }
  plan.boundary = (t == epsilon);

  const double ratio = (t * t) / (plan.delta * plan.delta);
  plan.k = std::log2(ratio);
  // n = ceil(2^k / gamma^2), evaluated in log space so huge counts survive.
  plan.n_registers = BigCount::ceil_of_pow2(plan.k - 2.0 * std::log2(plan.gamma));
  const double log2_n_target = std::log2(static_cast<double>(n_target));
  if (plan.n_registers.exact) {
    plan.log2_catalyst_dim = static_cast<double>(*plan.n_registers.exact - 1) * log2_n_target;
  } else {
    plan.log2_catalyst_dim = (plan.n_registers.value - 1.0) * log2_n_target;
  }
  plan.error_bound = plan.delta + plan.gamma;
  return plan;
}

double convex_split_error_bound(double k, double n_registers, double delta) {
  return std::sqrt(std::exp2(k) / n_registers) + delta;
}

double run_convex_split_small(const DensityMatrix& rho, std::size_t n_target, double delta,
                              std::size_t n_registers) {
  if (rho.dim() > n_target) throw DimensionMismatch("run_convex_split_small: input dimension exceeds target dimension");
  if (n_registers == 0) throw InvalidParameter("run_convex_split_small: need at least one register");
  const auto channel = convex_split_channel(n_registers, n_target);  // enforces the dense cap

  const DensityMatrix twirled = twirl(embed(rho, n_target)).to_density();
  const DensityMatrix sigma = make_isotropic(n_target, delta).to_density();
  const DensityMatrix catalyst = tensor_power(sigma, n_registers - 1);

  const DensityMatrix output = apply(channel, tensor(twirled, catalyst));
  const DensityMatrix target = tensor(DensityMatrix::pure(make_max_coherent(n_target)), catalyst);
  return purified_distance(output, target);
}

EmbezzlePlan plan_embezzling(std::size_t n_target, double epsilon) {
  if (n_target < 2) throw InvalidDimension("plan_embezzling: target dimension must be at least 2");
  require_epsilon(epsilon, "plan_embezzling");
  if (epsilon > 1.0) throw InvalidParameter("plan_embezzling: epsilon must not exceed 1");

  EmbezzlePlan plan;
  plan.log2_m = 2.0 / (epsilon * epsilon) * std::log2(2.0 * static_cast<double>(n_target)) - 1.0;
  if (plan.log2_m <= 63.0) {
    const double m = snapped_ceil(std::exp2(plan.log2_m));
    if (m < kTwoPow63) plan.m = static_cast<std::uint64_t>(m);
  }
  return plan;
}

namespace {

double embezzle_bound(std::uint64_t m, std::size_t n_target) {
  const double raw = 1.0 - (1.0 + std::log2(static_cast<double>(n_target))) / (1.0 + std::log2(static_cast<double>(m)));
  return std::max(0.0, raw);
}

void check_materializable(std::uint64_t m, std::size_t n_target) {
  if (m == 0 || n_target == 0) throw InvalidDimension("embezzling: m and N must be positive");
  if (m > kMaxEmbezzlingDim / n_target) {
    throw TooLarge("embezzling: m * N exceeds the materialization cap 2^24; use summation mode");
  }
}

// Ranks of the joint coefficients, largest first, ties in index order.
std::vector<std::size_t> sorted_indices(const AmplitudeVector& joint) {
  std::vector<std::size_t> idx(joint.dim());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return joint[a] > joint[b]; });
  return idx;
}

std::size_t omega_position(std::size_t rank, std::uint64_t m, std::size_t n_target) {
  return static_cast<std::size_t>(rank % m) * n_target + static_cast<std::size_t>(rank / m);
}

}  // namespace

Permutation embezzling_permutation(std::uint64_t m, std::size_t n_target) {
  check_materializable(m, n_target);
  const AmplitudeVector joint = tensor(make_embezzling(m), make_max_coherent(n_target));
  const auto ranked = sorted_indices(joint);
  Permutation perm(joint.dim());
  for (std::size_t s = 0; s < ranked.size(); ++s) perm[omega_position(s, m, n_target)] = ranked[s];
  return perm;
}

AmplitudeVector embezzling_omega(std::uint64_t m, std::size_t n_target) {
  check_materializable(m, n_target);
  const AmplitudeVector joint = tensor(make_embezzling(m), make_max_coherent(n_target));
  const auto ranked = sorted_indices(joint);
  std::vector<double> omega(joint.dim());
  for (std::size_t s = 0; s < ranked.size(); ++s) omega[omega_position(s, m, n_target)] = joint[ranked[s]];
  return AmplitudeVector(std::move(omega));
}

EmbezzleRun run_embezzling(std::uint64_t m, std::size_t n_target, EmbezzleMode mode,
                           const std::optional<State>& /*initial_state*/) {
  if (m == 0 || n_target == 0) throw InvalidDimension("run_embezzling: m and N must be positive");

  EmbezzleRun run;
  run.m = m;
  run.n_target = n_target;
  run.bound = embezzle_bound(m, n_target);

  if (mode == EmbezzleMode::summation) {
    run.achieved_fidelity = std::min(1.0, kernels::embezzle_overlap(m, n_target) / kernels::harmonic_desc(m));
    return run;
  }

  check_materializable(m, n_target);
  const AmplitudeVector catalyst = make_embezzling(m);
  const AmplitudeVector target = tensor(catalyst, make_max_coherent(n_target));
  const AmplitudeVector omega = embezzling_omega(m, n_target);
  const Permutation perm = embezzling_permutation(m, n_target);

  std::vector<double> moved(omega.dim());
  for (std::size_t x = 0; x < omega.dim(); ++x) moved[perm[x]] = omega[x];
  if (!std::equal(moved.begin(), moved.end(), target.amps().begin())) {
    throw std::logic_error("embezzling permutation does not map omega onto the target");
  }

  std::vector<double> with_first(omega.dim(), 0.0);
  for (std::uint64_t j = 0; j < m; ++j) with_first[static_cast<std::size_t>(j) * n_target] = catalyst[static_cast<std::size_t>(j)];
  run.achieved_fidelity = std::min(1.0, kernels::dot(with_first, omega.amps()));
  run.permutation_applied = true;
  return run;
}

CatalystDim CatalystDim::of(std::uint64_t m) {
  if (m == 0) throw InvalidDimension("catalyst dimension must be positive");
  CatalystDim d;
  d.exact = m;
  d.log2 = std::log2(static_cast<double>(m));
  return d;
}

CatalystDim CatalystDim::from_log2(double log2_m) {
  if (!(log2_m >= 0.0)) throw InvalidParameter("log2 of the catalyst dimension must be non-negative");
  CatalystDim d;
  d.log2 = log2_m;
  return d;
}

double CatalystDim::log2_minus_one() const {
  if (exact) {
    if (*exact <= 1) return -std::numeric_limits<double>::infinity();
    return std::log2(static_cast<double>(*exact - 1));
  }
  if (log2 <= 0.0) return -std::numeric_limits<double>::infinity();
  return log2 + std::log1p(-std::exp2(-log2)) / std::log(2.0);
}

namespace {

double rc_exponent(const CatalystDim& m, double epsilon, const char* op) {
  require_epsilon(epsilon, op);
  const double log_m1 = m.log2_minus_one();
  if (!(epsilon * epsilon * log_m1 / 4.0 >= 1.0)) {
    throw PreconditionViolation(std::string(op) + ": requires eps^2 log(M-1) / 4 >= 1");
  }
  return 0.5 * epsilon * epsilon * (log_m1 + 1.0);
}

}  // namespace

double rc_lower_bound(const CatalystDim& m, double epsilon) {
  return rc_exponent(m, epsilon, "rc_lower_bound") - 2.0;
}

double rc_log2_n_star(const CatalystDim& m, double epsilon) {
  const double e = rc_exponent(m, epsilon, "rc_log2_n_star") - 1.0;
  if (e >= 52.0) return e;  // floor() is below double resolution here
  const double x = std::exp2(e);
  const double r = std::round(x);
  const double n_star = std::abs(x - r) <= 1e-12 * x ? r : std::floor(x);
  return std::log2(n_star);
}

ProtocolEstimates rc_protocol_estimates(double m_log2, double epsilon, double t, const RegimeThresholds& regime) {
  require_epsilon(epsilon, "rc_protocol_estimates");
  if (!(t > 0.0 && t <= 1.0)) throw InvalidParameter("rc_protocol_estimates: t must lie in (0, 1]");
  if (!(m_log2 >= 0.0)) throw InvalidParameter("rc_protocol_estimates: log M must be non-negative");

  ProtocolEstimates out;
  const double eps2 = epsilon * epsilon;
  out.convex_split = eps2 * eps2 / (16.0 * t * t) * m_log2;
  out.embezzling = 0.5 * eps2 * m_log2;
  if (epsilon > regime.max_epsilon) out.warnings.push_back("epsilon above the small-epsilon regime");
  if (eps2 * m_log2 < regime.min_eps2_log_m) out.warnings.push_back("eps^2 log M below the large-catalyst regime");
  if (t <= epsilon) out.warnings.push_back("t <= epsilon: the convex-split estimate assumes t > epsilon");
  return out;
}

}  // namespace cohcat
