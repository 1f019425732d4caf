#include "cohcat/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohcat/error.hpp"

namespace cohcat::random {

namespace {

std::vector<double> dirichlet(std::size_t dim, Engine& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = exp1(rng);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

ProbabilityVector probability(std::size_t dim, Engine& rng) {
  if (dim == 0) throw InvalidDimension("random probability vector needs dim >= 1");
  return ProbabilityVector(dirichlet(dim, rng));
}

AmplitudeVector pure(std::size_t support, std::size_t dim, Engine& rng) {
  if (support == 0 || support > dim) throw InvalidDimension("random pure state needs 1 <= support <= dim");
  auto p = dirichlet(support, rng);
  std::vector<double> amps(dim, 0.0);
  std::transform(p.begin(), p.end(), amps.begin(), [](double x) { return std::sqrt(x); });
  // Renormalize the amplitudes themselves so rounding in sqrt cannot push
  // the 2-norm outside the validation tolerance.
  double norm = 0.0;
  for (double a : amps) norm += a * a;
  norm = std::sqrt(norm);
  for (double& a : amps) a /= norm;
  return AmplitudeVector(std::move(amps));
}

DensityMatrix density(std::size_t dim, Engine& rng, std::size_t rank) {
  if (dim == 0) throw InvalidDimension("random density matrix needs dim >= 1");
  if (rank == 0 || rank > dim) rank = dim;
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(rank);
  Matrix g(d, k);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::trusted(std::move(rho));
}

}  // namespace cohcat::random
