#include "cohcat/channels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "cohcat/error.hpp"

namespace cohcat {

namespace {

constexpr double kNonzero = 1e-12;

// base^exp, or 0 if it overflows or exceeds the cap.
std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return 0;
    out *= base;
  }
  return out;
}

std::size_t joint_dim_or_throw(std::size_t local_dim, std::size_t n) {
  const std::size_t cap = dense_cap();
  const std::size_t total = checked_power(local_dim, n, cap);
  if (total == 0 || total > cap) {
    throw TooLarge("dense dimension " + std::to_string(local_dim) + "^" + std::to_string(n) +
                   " exceeds the cap of " + std::to_string(cap) +
                   "; use the closed-form planner (plan_convex_split) instead");
  }
  return total;
}

}  // namespace

std::size_t dense_cap() {
  if (const char* env = std::getenv("COHCAT_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDenseCap;
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw InvalidParameter("Kraus channel needs at least one operator");
  out_dim_ = static_cast<std::size_t>(ops_.front().rows());
  in_dim_ = static_cast<std::size_t>(ops_.front().cols());
  if (in_dim_ == 0 || out_dim_ == 0) throw InvalidDimension("Kraus operators must be non-empty");
  Matrix sum = Matrix::Zero(ops_.front().cols(), ops_.front().cols());
  for (const Matrix& k : ops_) {
    if (static_cast<std::size_t>(k.rows()) != out_dim_ || static_cast<std::size_t>(k.cols()) != in_dim_) {
      throw DimensionMismatch("Kraus operators have inconsistent shapes");
    }
    sum += k.adjoint() * k;
  }
  const Matrix defect = sum - Matrix::Identity(sum.rows(), sum.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-10) throw NotTracePreserving("sum of K^dagger K differs from identity");
}

PermutationMixture::PermutationMixture(std::size_t n, std::vector<std::pair<Permutation, double>> terms)
    : n_(n), terms_(std::move(terms)) {
  if (n_ == 0) throw InvalidDimension("permutation mixture needs n >= 1");
  if (terms_.empty()) throw InvalidParameter("permutation mixture needs at least one term");
  double total = 0.0;
  for (const auto& [perm, p] : terms_) {
    if (!(p >= 0.0)) throw InvalidParameter("permutation weights must be non-negative");
    if (perm.size() != n_) throw DimensionMismatch("permutation length differs from mixture dimension");
    std::vector<bool> hit(n_, false);
    for (std::size_t target : perm) {
      if (target >= n_ || hit[target]) throw InvalidParameter("permutation is not a bijection");
      hit[target] = true;
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidParameter("permutation weights do not sum to one");
}

std::vector<Matrix> PermutationMixture::kraus_ops() const {
  std::vector<Matrix> ops;
  ops.reserve(terms_.size());
  const auto n = static_cast<Eigen::Index>(n_);
  for (const auto& [perm, p] : terms_) {
    Matrix k = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < n_; ++j) k(static_cast<Eigen::Index>(perm[j]), static_cast<Eigen::Index>(j)) = std::sqrt(p);
    ops.push_back(std::move(k));
  }
  return ops;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.in_dim()) throw DimensionMismatch("channel input dimension differs from state dimension");
  const auto d = static_cast<Eigen::Index>(channel.out_dim());
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& k : channel.kraus_ops()) out.noalias() += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out));
}

DensityMatrix apply(const PermutationMixture& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.dim()) throw DimensionMismatch("channel input dimension differs from state dimension");
  const auto n = static_cast<Eigen::Index>(channel.dim());
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [perm, p] : channel.terms()) {
    if (p == 0.0) continue;
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto pb = static_cast<Eigen::Index>(perm[static_cast<std::size_t>(b)]);
      for (Eigen::Index a = 0; a < n; ++a) {
        out(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(a)]), pb) += p * in(a, b);
      }
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

bool is_incoherent_kraus(const Matrix& k) {
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    if ((k.col(c).array().abs() > kNonzero).count() > 1) return false;
  }
  return true;
}

bool is_sio_kraus(const Matrix& k) {
  if (!is_incoherent_kraus(k)) return false;
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    if ((k.row(r).array().abs() > kNonzero).count() > 1) return false;
  }
  return true;
}

IsotropicState twirl(const DensityMatrix& rho) {
  // The commutant of the permutation action is span{I, J}; the average keeps
  // the trace and the overlap with Psi_n, which fixes both coefficients.
  const double n = static_cast<double>(rho.dim());
  const double overlap = rho.matrix().sum().real() / n;
  if (rho.dim() == 1) return IsotropicState(1, 0.0);
  const double t2 = std::clamp(1.0 - overlap, 0.0, 1.0);
  return IsotropicState(rho.dim(), std::sqrt(t2));
}

DensityMatrix convex_split_state(const DensityMatrix& omega, const DensityMatrix& sigma, std::size_t n) {
  if (n == 0) throw InvalidParameter("convex split needs n >= 1 registers");
  if (omega.dim() != sigma.dim()) throw DimensionMismatch("convex split: omega and sigma differ in dimension");
  const std::size_t total = joint_dim_or_throw(omega.dim(), n);

  // powers[k] = sigma^{(x) k}
  std::vector<Matrix> powers;
  powers.reserve(n);
  powers.push_back(Matrix::Identity(1, 1));
  for (std::size_t k = 1; k < n; ++k) powers.push_back(linalg::kron(powers.back(), sigma.matrix()));

  const auto d = static_cast<Eigen::Index>(total);
  Matrix tau = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < n; ++j) {
    tau.noalias() += linalg::kron(linalg::kron(powers[j], omega.matrix()), powers[n - 1 - j]);
  }
  tau /= static_cast<double>(n);
  return DensityMatrix::trusted(std::move(tau));
}

PermutationMixture convex_split_channel(std::size_t n, std::size_t local_dim) {
  if (n == 0) throw InvalidParameter("convex split needs n >= 1 registers");
  if (local_dim == 0) throw InvalidDimension("register dimension must be positive");
  const std::size_t total = joint_dim_or_throw(local_dim, n);

  // Digit of register r (0-based, register 0 most significant) has weight
  // local_dim^(n-1-r).
  std::vector<std::size_t> weight(n);
  std::size_t w = 1;
  for (std::size_t r = n; r-- > 0;) {
    weight[r] = w;
    w *= local_dim;
  }

  std::vector<std::pair<Permutation, double>> terms;
  terms.reserve(n);
  const double p = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    Permutation perm(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const std::size_t first = (idx / weight[0]) % local_dim;
      const std::size_t other = (idx / weight[j]) % local_dim;
      std::size_t out = idx;
      if (j != 0) {
        out = out - first * weight[0] - other * weight[j] + other * weight[0] + first * weight[j];
      }
      perm[idx] = out;
    }
    terms.emplace_back(std::move(perm), p);
  }
  return PermutationMixture(total, std::move(terms));
}

}  // namespace cohcat
