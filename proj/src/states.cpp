#include "cohcat/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohcat/error.hpp"
#include "cohcat/kernels.hpp"

namespace cohcat {

namespace {

constexpr double kNegativeEntryTolerance = 1e-14;

std::vector<double> clamp_tiny_negatives(std::vector<double> v, const char* what) {
  for (double& x : v) {
    if (!std::isfinite(x)) throw InvalidState(std::string(what) + ": non-finite entry");
    if (x < 0.0) {
      if (x < -kNegativeEntryTolerance) throw InvalidState(std::string(what) + ": negative entry");
      x = 0.0;
    }
  }
  return v;
}

}  // namespace

AmplitudeVector::AmplitudeVector(std::vector<double> amps) : amps_(clamp_tiny_negatives(std::move(amps), "amplitudes")) {
  if (amps_.empty()) throw InvalidDimension("amplitude vector must have positive dimension");
  const double norm2 = kernels::dot(amps_, amps_);
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidState("amplitudes are not normalized: sum of squares = " + std::to_string(norm2));
  }
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs)
    : probs_(clamp_tiny_negatives(std::move(probs), "probabilities")) {
  if (probs_.empty()) throw InvalidDimension("probability vector must have positive dimension");
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidState("probabilities do not sum to one: " + std::to_string(total));
  }
}

double ProbabilityVector::max() const { return *std::max_element(probs_.begin(), probs_.end()); }

std::size_t ProbabilityVector::support_size() const {
  return static_cast<std::size_t>(std::count_if(probs_.begin(), probs_.end(), [](double x) { return x > 0.0; }));
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InvalidDimension("density matrix must be square and non-empty");
  if (!m_.allFinite()) throw InvalidState("density matrix has non-finite entries");
  if (linalg::hermiticity_defect(m_) > 1e-12) throw InvalidState("density matrix is not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > kNormTolerance || std::abs(tr.imag()) > kNormTolerance) {
    throw InvalidState("density matrix trace is not one");
  }
  const auto eig = linalg::eigh(m_);
  if (eig.values.minCoeff() < linalg::kPsdClamp) throw InvalidState("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), Trusted{}); }

DensityMatrix DensityMatrix::pure(const AmplitudeVector& psi) {
  const auto n = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = psi[static_cast<std::size_t>(i)];
  return trusted(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const ProbabilityVector& p) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
  return trusted(std::move(m));
}

IsotropicState::IsotropicState(std::size_t n, double t) : n_(n), t_(t) {
  if (n == 0) throw InvalidDimension("isotropic state needs n >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("isotropic parameter t must lie in [0, 1]");
  if (n == 1 && t > 0.0) throw InvalidParameter("isotropic state with n = 1 has no orthogonal complement; t must be 0");
}

DensityMatrix IsotropicState::to_density() const {
  const auto n = static_cast<Eigen::Index>(n_);
  const double t2 = t_ * t_;
  // (1-t^2) J/n + t^2 (I - J/n)/(n-1) with J the all-ones matrix.
  const double on_psi = 1.0 - t2;
  const double off_psi = n_ > 1 ? t2 / static_cast<double>(n_ - 1) : 0.0;
  const double ones_coeff = (on_psi - off_psi) / static_cast<double>(n_);
  Matrix m = Matrix::Constant(n, n, ones_coeff);
  m.diagonal().array() += off_psi;
  return DensityMatrix::trusted(std::move(m));
}

std::size_t dim(const State& s) {
  return std::visit([](const auto& x) { return x.dim(); }, s);
}

DensityMatrix to_density(const State& s) {
  struct Visitor {
    DensityMatrix operator()(const AmplitudeVector& a) const { return DensityMatrix::pure(a); }
    DensityMatrix operator()(const ProbabilityVector& p) const { return DensityMatrix::diagonal(p); }
    DensityMatrix operator()(const DensityMatrix& r) const { return r; }
    DensityMatrix operator()(const IsotropicState& i) const { return i.to_density(); }
  };
  return std::visit(Visitor{}, s);
}

AmplitudeVector make_max_coherent(std::size_t n) {
  if (n == 0) throw InvalidDimension("maximally coherent state needs n >= 1");
  return AmplitudeVector(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

AmplitudeVector make_embezzling(std::uint64_t m) {
  if (m == 0) throw InvalidDimension("embezzling state needs m >= 1");
  if (m > kMaxEmbezzlingDim) {
    throw TooLarge("embezzling state of dimension " + std::to_string(m) +
                   " exceeds the materialization cap 2^24; use summation mode");
  }
  const double norm = kernels::harmonic_desc(m);
  std::vector<double> amps(m);
  for (std::uint64_t j = 1; j <= m; ++j) amps[j - 1] = 1.0 / std::sqrt(static_cast<double>(j) * norm);
  return AmplitudeVector(std::move(amps));
}

IsotropicState make_isotropic(std::size_t n, double t) { return IsotropicState(n, t); }

ProbabilityVector dephase(const AmplitudeVector& psi) {
  std::vector<double> p(psi.dim());
  std::transform(psi.amps().begin(), psi.amps().end(), p.begin(), [](double a) { return a * a; });
  return ProbabilityVector(std::move(p));
}

ProbabilityVector dephase(const ProbabilityVector& p) { return p; }

ProbabilityVector dephase(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    p[i] = std::max(0.0, rho.matrix()(k, k).real());
  }
  return ProbabilityVector(std::move(p));
}

ProbabilityVector dephase(const IsotropicState& iso) {
  return ProbabilityVector(std::vector<double>(iso.dim(), 1.0 / static_cast<double>(iso.dim())));
}

ProbabilityVector dephase(const State& s) {
  return std::visit([](const auto& x) { return dephase(x); }, s);
}

namespace {

void check_embed(std::size_t from, std::size_t to) {
  if (to < from) {
    throw InvalidDimension("cannot embed dimension " + std::to_string(from) + " into " + std::to_string(to));
  }
}

}  // namespace

AmplitudeVector embed(const AmplitudeVector& psi, std::size_t n) {
  check_embed(psi.dim(), n);
  std::vector<double> amps(psi.amps().begin(), psi.amps().end());
  amps.resize(n, 0.0);
  return AmplitudeVector(std::move(amps));
}

ProbabilityVector embed(const ProbabilityVector& p, std::size_t n) {
  check_embed(p.dim(), n);
  std::vector<double> probs(p.probs().begin(), p.probs().end());
  probs.resize(n, 0.0);
  return ProbabilityVector(std::move(probs));
}

DensityMatrix embed(const DensityMatrix& rho, std::size_t n) {
  check_embed(rho.dim(), n);
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.topLeftCorner(d, d) = rho.matrix();
  return DensityMatrix::trusted(std::move(m));
}

AmplitudeVector tensor(const AmplitudeVector& a, const AmplitudeVector& b) {
  std::vector<double> out;
  out.reserve(a.dim() * b.dim());
  for (double x : a.amps())
    for (double y : b.amps()) out.push_back(x * y);
  return AmplitudeVector(std::move(out));
}

ProbabilityVector tensor(const ProbabilityVector& a, const ProbabilityVector& b) {
  std::vector<double> out;
  out.reserve(a.dim() * b.dim());
  for (double x : a.probs())
    for (double y : b.probs()) out.push_back(x * y);
  return ProbabilityVector(std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(linalg::kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t k) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) out = linalg::kron(out, rho.matrix());
  return DensityMatrix::trusted(std::move(out));
}

nlohmann::json to_json(const State& s) {
  struct Visitor {
    nlohmann::json operator()(const AmplitudeVector& a) const {
      return {{"kind", "amplitudes"}, {"dim", a.dim()}, {"data", std::vector<double>(a.amps().begin(), a.amps().end())}};
    }
    nlohmann::json operator()(const ProbabilityVector& p) const {
      return {
          {"kind", "probabilities"}, {"dim", p.dim()}, {"data", std::vector<double>(p.probs().begin(), p.probs().end())}};
    }
    nlohmann::json operator()(const DensityMatrix& r) const {
      nlohmann::json data = nlohmann::json::array();
      const Matrix& m = r.matrix();
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
      return {{"kind", "density"}, {"dim", r.dim()}, {"data", std::move(data)}};
    }
    nlohmann::json operator()(const IsotropicState& i) const {
      return {{"kind", "isotropic"}, {"n", i.dim()}, {"t", i.t()}};
    }
  };
  return std::visit(Visitor{}, s);
}

State state_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "isotropic") return IsotropicState(j.at("n").get<std::size_t>(), j.at("t").get<double>());

    const auto n = j.at("dim").get<std::size_t>();
    const auto& data = j.at("data");
    if (kind == "amplitudes" || kind == "probabilities") {
      auto values = data.get<std::vector<double>>();
      if (values.size() != n) throw InvalidState("state JSON: data length does not match dim");
      if (kind == "amplitudes") return AmplitudeVector(std::move(values));
      return ProbabilityVector(std::move(values));
    }
    if (kind == "density") {
      if (data.size() != n * n) throw InvalidState("state JSON: density data must hold dim*dim entries");
      const auto d = static_cast<Eigen::Index>(n);
      Matrix m(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) {
          const auto& entry = data.at(static_cast<std::size_t>(i * d + k));
          m(i, k) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
      }
      return DensityMatrix(std::move(m));
    }
    throw InvalidState("state JSON: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidState(std::string("state JSON: ") + e.what());
  }
}

}  // namespace cohcat
