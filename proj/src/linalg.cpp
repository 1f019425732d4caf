#include "cohcat/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cohcat::linalg {

HermitianEigen eigh(const Matrix& m) {
  // Symmetrize so rounding noise above the diagonal cannot leak in.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix apply_function(const Matrix& m, const std::function<double(double)>& f) {
  const auto [values, vectors] = eigh(m);
  Eigen::VectorXd mapped(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    double lambda = values[i];
    if (lambda < 0.0 && lambda >= kPsdClamp) lambda = 0.0;
    mapped[i] = f(lambda);
  }
  return vectors * mapped.asDiagonal() * vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace cohcat::linalg
