#include "cohcat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohcat/error.hpp"
#include "cohcat/kernels.hpp"

namespace cohcat {

namespace {

// Eigenvalues below this are treated as exact zeros before taking
// fractional powers, so eigen-solver noise on rank-deficient states is not
// amplified by sqrt.
constexpr double kRankCutoff = 1e-14;
// Support threshold for sigma in the divergences.
constexpr double kSupportCutoff = 1e-12;
// Mass of rho outside supp(sigma) tolerated before reporting +infinity.
constexpr double kSupportViolation = 1e-10;

void require_same_dim(const State& a, const State& b, const char* op) {
  if (dim(a) != dim(b)) {
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(dim(a)) + " and " +
                            std::to_string(dim(b)) + " differ");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

Matrix psd_power(const Matrix& m, double power) {
  return linalg::apply_function(m, [power](double x) { return x <= kRankCutoff ? 0.0 : std::pow(x, power); });
}

Eigen::VectorXcd as_complex(const AmplitudeVector& a) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) v[static_cast<Eigen::Index>(i)] = a[i];
  return v;
}

// <psi| rho |psi> for a pure state against anything.
double expectation(const AmplitudeVector& psi, const State& other) {
  if (const auto* b = std::get_if<AmplitudeVector>(&other)) {
    const double overlap = kernels::dot(psi.amps(), b->amps());
    return overlap * overlap;
  }
  if (const auto* p = std::get_if<ProbabilityVector>(&other)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) sum += psi[i] * psi[i] * (*p)[i];
    return sum;
  }
  if (const auto* iso = std::get_if<IsotropicState>(&other)) {
    const double n = static_cast<double>(iso->dim());
    const double total = std::accumulate(psi.amps().begin(), psi.amps().end(), 0.0);
    const double on_psi = total * total / n;  // |<Psi_n|psi>|^2
    const double t2 = iso->t() * iso->t();
    if (iso->dim() == 1) return on_psi;
    return (1.0 - t2) * on_psi + t2 * (1.0 - on_psi) / (n - 1.0);
  }
  const auto& rho = std::get<DensityMatrix>(other).matrix();
  const Eigen::VectorXcd v = as_complex(psi);
  return (v.adjoint() * rho * v)(0, 0).real();
}

double dense_fidelity(const Matrix& a, const Matrix& b) {
  const Matrix product = psd_power(a, 0.5) * psd_power(b, 0.5);
  Eigen::JacobiSVD<Matrix> svd(product);
  return svd.singularValues().sum();
}

double dense_trace_distance(const Matrix& a, const Matrix& b) {
  const auto eig = linalg::eigh(a - b);
  return 0.5 * eig.values.cwiseAbs().sum();
}

DivergenceValue log_ratio(double lambda) {
  if (!std::isfinite(lambda)) return DivergenceValue::infinite();
  return {std::max(0.0, std::log2(lambda)), true};
}

DivergenceValue isotropic_d_max(const IsotropicState& rho, const IsotropicState& sigma) {
  // Both are diagonal in the same basis: Psi_n with weight 1-t^2 and its
  // complement with t^2/(n-1) per direction.
  const double rho_on = 1.0 - rho.t() * rho.t();
  const double sigma_on = 1.0 - sigma.t() * sigma.t();
  const double rho_off = rho.t() * rho.t();
  const double sigma_off = sigma.t() * sigma.t();
  double lambda = 0.0;
  for (const auto& [r, s] : {std::pair{rho_on, sigma_on}, std::pair{rho_off, sigma_off}}) {
    if (r <= 0.0) continue;
    if (s <= 0.0) return DivergenceValue::infinite();
    lambda = std::max(lambda, r / s);
  }
  return log_ratio(lambda);
}

DivergenceValue classical_d_max(const ProbabilityVector& p, const ProbabilityVector& q) {
  double lambda = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (q[i] <= kSupportCutoff) {
      if (p[i] > kSupportViolation) return DivergenceValue::infinite();
      continue;
    }
    lambda = std::max(lambda, p[i] / q[i]);
  }
  return log_ratio(lambda);
}

struct SupportSplit {
  Matrix support;     // columns spanning supp(sigma)
  Eigen::VectorXd values;  // matching eigenvalues
  Matrix kernel;      // columns spanning ker(sigma)
};

SupportSplit split_support(const Matrix& sigma) {
  const auto eig = linalg::eigh(sigma);
  std::vector<Eigen::Index> on, off;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) (eig.values[i] > kSupportCutoff ? on : off).push_back(i);
  SupportSplit out;
  out.support.resize(sigma.rows(), static_cast<Eigen::Index>(on.size()));
  out.values.resize(static_cast<Eigen::Index>(on.size()));
  out.kernel.resize(sigma.rows(), static_cast<Eigen::Index>(off.size()));
  for (std::size_t k = 0; k < on.size(); ++k) {
    out.support.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(on[k]);
    out.values[static_cast<Eigen::Index>(k)] = eig.values[on[k]];
  }
  for (std::size_t k = 0; k < off.size(); ++k) out.kernel.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(off[k]);
  return out;
}

bool leaks_outside(const Matrix& rho, const SupportSplit& split) {
  if (split.kernel.cols() == 0) return false;
  const Matrix outside = split.kernel.adjoint() * rho * split.kernel;
  return outside.cwiseAbs().maxCoeff() > kSupportViolation;
}

DivergenceValue dense_d_max(const Matrix& rho, const Matrix& sigma) {
  const SupportSplit split = split_support(sigma);
  if (leaks_outside(rho, split)) return DivergenceValue::infinite();
  const Eigen::VectorXd inv_sqrt = split.values.cwiseSqrt().cwiseInverse();
  const Matrix reduced = inv_sqrt.asDiagonal() * (split.support.adjoint() * rho * split.support) * inv_sqrt.asDiagonal();
  return log_ratio(linalg::eigh(reduced).values.maxCoeff());
}

}  // namespace

double fidelity(const State& a, const State& b) {
  require_same_dim(a, b, "fidelity");
  if (const auto* pa = std::get_if<AmplitudeVector>(&a)) {
    if (const auto* pb = std::get_if<AmplitudeVector>(&b)) return clamp01(kernels::dot(pa->amps(), pb->amps()));
    return clamp01(std::sqrt(std::max(0.0, expectation(*pa, b))));
  }
  if (const auto* pb = std::get_if<AmplitudeVector>(&b)) return clamp01(std::sqrt(std::max(0.0, expectation(*pb, a))));

  const auto* ca = std::get_if<ProbabilityVector>(&a);
  const auto* cb = std::get_if<ProbabilityVector>(&b);
  if (ca && cb) return clamp01(kernels::sqrt_product_sum(ca->probs(), cb->probs()));

  const auto* ia = std::get_if<IsotropicState>(&a);
  const auto* ib = std::get_if<IsotropicState>(&b);
  if (ia && ib) {
    const double t = ia->t();
    const double s = ib->t();
    return clamp01(std::sqrt((1.0 - t * t) * (1.0 - s * s)) + t * s);
  }
  return clamp01(dense_fidelity(to_density(a).matrix(), to_density(b).matrix()));
}

double purified_distance(const State& a, const State& b) {
  const double f = fidelity(a, b);
  const auto* pa = std::get_if<AmplitudeVector>(&a);
  const auto* pb = std::get_if<AmplitudeVector>(&b);
  if (pa && pb) {
    // 1 - F = |a - b|^2 / 2 for real unit vectors, without cancellation.
    double d2 = 0.0;
    for (std::size_t i = 0; i < pa->dim(); ++i) d2 += ((*pa)[i] - (*pb)[i]) * ((*pa)[i] - (*pb)[i]);
    return std::sqrt(std::max(0.0, 0.5 * d2 * (1.0 + f)));
  }
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double trace_distance(const State& a, const State& b) {
  require_same_dim(a, b, "trace_distance");
  const auto* ca = std::get_if<ProbabilityVector>(&a);
  const auto* cb = std::get_if<ProbabilityVector>(&b);
  if (ca && cb) return 0.5 * kernels::abs_diff_sum(ca->probs(), cb->probs());
  if (std::holds_alternative<AmplitudeVector>(a) && std::holds_alternative<AmplitudeVector>(b)) {
    return purified_distance(a, b);
  }
  const auto* ia = std::get_if<IsotropicState>(&a);
  const auto* ib = std::get_if<IsotropicState>(&b);
  if (ia && ib) return std::abs(ia->t() * ia->t() - ib->t() * ib->t());
  return clamp01(dense_trace_distance(to_density(a).matrix(), to_density(b).matrix()));
}

DivergenceValue d_max(const State& rho, const State& sigma) {
  require_same_dim(rho, sigma, "d_max");
  const auto* ir = std::get_if<IsotropicState>(&rho);
  const auto* is = std::get_if<IsotropicState>(&sigma);
  if (ir && is) return isotropic_d_max(*ir, *is);
  const auto* cr = std::get_if<ProbabilityVector>(&rho);
  const auto* cs = std::get_if<ProbabilityVector>(&sigma);
  if (cr && cs) return classical_d_max(*cr, *cs);
  return dense_d_max(to_density(rho).matrix(), to_density(sigma).matrix());
}

DivergenceValue d_min(const State& rho, const State& sigma) {
  const double f = fidelity(rho, sigma);
  if (f <= 0.0) return DivergenceValue::infinite();
  return {std::max(0.0, -2.0 * std::log2(f)), true};
}

DivergenceValue sandwiched_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw InvalidParameter("sandwiched divergence needs alpha > 0 and alpha != 1");
  }
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("sandwiched_divergence: dimensions differ");

  const SupportSplit split = split_support(sigma.matrix());
  if (alpha > 1.0 && leaks_outside(rho.matrix(), split)) return DivergenceValue::infinite();

  const double power = (1.0 - alpha) / (2.0 * alpha);
  const Eigen::VectorXd scaled = split.values.array().pow(power).matrix();
  const Matrix reduced =
      scaled.asDiagonal() * (split.support.adjoint() * rho.matrix() * split.support) * scaled.asDiagonal();
  const auto eig = linalg::eigh(reduced);
  double q = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] > kRankCutoff) q += std::pow(eig.values[i], alpha);
  }
  if (q <= 0.0) return DivergenceValue::infinite();
  return {std::max(0.0, std::log2(q) / (alpha - 1.0)), true};
}

double renyi_entropy(const ProbabilityVector& p, double alpha) {
  if (std::isnan(alpha)) throw InvalidParameter("renyi_entropy: alpha is NaN");
  const auto probs = p.probs();
  const bool has_zero = p.support_size() < p.dim();

  if (alpha == std::numeric_limits<double>::infinity()) return -std::log2(p.max());
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : probs)
      if (x > 0.0) h -= x * std::log2(x);
    return h;
  }
  if (alpha == 0.0) return std::log2(static_cast<double>(p.support_size()));
  if (alpha < 0.0 && has_zero) return -std::numeric_limits<double>::infinity();
  if (alpha == -std::numeric_limits<double>::infinity()) {
    return std::log2(*std::min_element(probs.begin(), probs.end()));
  }

  // Scale by the largest (alpha > 0) or smallest (alpha < 0) entry so the
  // power sum stays near 1 at extreme orders.
  const double pivot = alpha > 0.0 ? p.max() : *std::min_element(probs.begin(), probs.end());
  double sum = 0.0;
  for (double x : probs)
    if (x > 0.0) sum += std::pow(x / pivot, alpha);
  const double sign = alpha > 0.0 ? 1.0 : -1.0;
  return sign / (1.0 - alpha) * (alpha * std::log2(pivot) + std::log2(sum));
}

double c_min_zero(const AmplitudeVector& phi) {
  const double top = *std::max_element(phi.amps().begin(), phi.amps().end());
  return std::max(0.0, -std::log2(top * top));
}

}  // namespace cohcat
