#pragma once

// Reference computations used only by the tests. They avoid the library's
// fast paths: dense matrices everywhere, textbook formulas, brute force.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = std::vector<double>;

inline Mat herm_fn(const Mat& m, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f(v[i]);
  return es.eigenvectors() * v.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat msqrt(const Mat& m) {
  return herm_fn(m, [](double x) { return x > 1e-14 ? std::sqrt(x) : 0.0; });
}

// Tr sqrt(sqrt(a) b sqrt(a))
inline double fidelity(const Mat& a, const Mat& b) {
  const Mat s = msqrt(a);
  Mat inner = s * b * s;
  inner = (inner + inner.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(inner);
  double f = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()[i];
    if (x > 1e-14) f += std::sqrt(x);
  }
  return f;
}

inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline Mat pure(const Vec& amps) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
  return v * v.adjoint();
}

inline Mat diag(const Vec& p) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return m;
}

// (1 - t^2) |Psi><Psi| + t^2 (I - |Psi><Psi|) / (n - 1), built from projectors.
inline Mat isotropic(std::size_t n, double t) {
  const Mat psi = pure(Vec(n, 1.0 / std::sqrt(static_cast<double>(n))));
  const Mat id = Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return (1 - t * t) * psi + t * t * (id - psi) / static_cast<double>(n - 1);
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat power(const Mat& a, std::size_t k) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

// (1/n) sum_j sigma^(j-1) (x) omega (x) sigma^(n-j)
inline Mat convex_split(const Mat& omega, const Mat& sigma, std::size_t n) {
  Mat sum = Mat::Zero(static_cast<Eigen::Index>(std::pow(omega.rows(), n)), static_cast<Eigen::Index>(std::pow(omega.rows(), n)));
  for (std::size_t j = 0; j < n; ++j) sum += kron(kron(power(sigma, j), omega), power(sigma, n - 1 - j));
  return sum / static_cast<double>(n);
}

// Average over every permutation conjugation.
inline Mat twirl(const Mat& rho) {
  const auto n = static_cast<std::size_t>(rho.rows());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Mat sum = Mat::Zero(rho.rows(), rho.cols());
  double count = 0;
  do {
    Mat p = Mat::Zero(rho.rows(), rho.cols());
    for (std::size_t j = 0; j < n; ++j) p(static_cast<Eigen::Index>(perm[j]), static_cast<Eigen::Index>(j)) = 1;
    sum += p * rho * p.transpose();
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / count;
}

// Smallest lambda with lambda sigma >= rho, by bisection on the PSD test.
inline double max_ratio(const Mat& rho, const Mat& sigma) {
  double lo = 0, hi = 1e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    Eigen::SelfAdjointEigenSolver<Mat> es(mid * sigma - rho);
    (es.eigenvalues().minCoeff() >= -1e-13 ? hi : lo) = mid;
  }
  return hi;
}

inline double renyi(const Vec& p, double alpha) {
  double s = 0;
  for (double x : p)
    if (x > 0) s += std::pow(x, alpha);
  return (alpha > 0 ? 1.0 : -1.0) / (1 - alpha) * std::log2(s);
}

inline double classical_renyi_divergence(const Vec& p, const Vec& q, double alpha) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::pow(p[i], alpha) * std::pow(q[i], 1 - alpha);
  return std::log2(s) / (alpha - 1);
}

inline bool prefix_dominates(Vec p, Vec q) {
  p.resize(std::max(p.size(), q.size()), 0.0);
  q.resize(p.size(), 0.0);
  std::sort(p.rbegin(), p.rend());
  std::sort(q.rbegin(), q.rend());
  double a = 0, b = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    a += p[i];
    b += q[i];
    if (a < b - 1e-12) return false;
  }
  return true;
}

inline Vec outer(const Vec& a, const Vec& b) {
  Vec out;
  for (double x : a)
    for (double y : b) out.push_back(x * y);
  return out;
}

inline double harmonic(std::uint64_t m) {
  long double s = 0;
  for (std::uint64_t j = 1; j <= m; ++j) s += 1.0L / static_cast<long double>(j);
  return static_cast<double>(s);
}

// F = (1/C(m)) sum_j 1/sqrt(j n ceil(j/n)), in long double.
inline double embezzle_fidelity(std::uint64_t m, std::uint64_t n) {
  long double s = 0;
  for (std::uint64_t j = 1; j <= m; ++j) {
    const std::uint64_t c = (j + n - 1) / n;
    s += 1.0L / std::sqrt(static_cast<long double>(j) * n * c);
  }
  return static_cast<double>(s / harmonic(m));
}

// Seeded generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo = 0, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

  Vec simplex(std::size_t n) {
    Vec p(n);
    double s = 0;
    for (auto& x : p) s += (x = -std::log(uniform(1e-300, 1.0)));
    for (auto& x : p) x /= s;
    return p;
  }

  Vec amplitudes(std::size_t n) {
    Vec p = simplex(n);
    for (auto& x : p) x = std::sqrt(x);
    double s = 0;
    for (double x : p) s += x * x;
    for (auto& x : p) x /= std::sqrt(s);
    return p;
  }

  Mat density(std::size_t n) {
    Mat g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::normal_distribution<double> z;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = {z(rng), z(rng)};
    Mat r = g * g.adjoint();
    r /= r.trace().real();
    return (r + r.adjoint()) / 2.0;
  }
};

}  // namespace oracle
