#pragma once

// Dense Hermitian helpers shared by the metric and channel code.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace cohcat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace linalg {

/// Eigenvalues at or above this (negative) level are treated as PSD drift
/// and clamped to zero by the matrix functions below.
inline constexpr double kPsdClamp = -1e-10;

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;
};

HermitianEigen eigh(const Matrix& m);

/// V f(lambda) V^dagger for Hermitian m. Eigenvalues in [kPsdClamp, 0) are
/// passed to f as exact zeros.
Matrix apply_function(const Matrix& m, const std::function<double(double)>& f);

Matrix kron(const Matrix& a, const Matrix& b);

/// Largest |m(i,j) - conj(m(j,i))|.
double hermiticity_defect(const Matrix& m);

}  // namespace linalg
}  // namespace cohcat
