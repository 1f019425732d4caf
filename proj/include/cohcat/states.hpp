#pragma once

// State representations in a fixed incoherent basis {|0>, ..., |d-1>}.
//
// AmplitudeVector and ProbabilityVector cover every structured state the
// protocols need (maximally coherent, embezzling, smoothed targets);
// DensityMatrix is the dense oracle representation; IsotropicState is the
// closed-form output family of the permutation twirl. All are immutable
// after construction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cohcat/linalg.hpp"
#include "json.hpp"

namespace cohcat {

inline constexpr double kNormTolerance = 1e-12;

/// Pure state with real non-negative amplitudes and unit 2-norm.
class AmplitudeVector {
 public:
  /// Validates non-negativity and normalization (tolerance 1e-12).
  explicit AmplitudeVector(std::vector<double> amps);

  std::size_t dim() const { return amps_.size(); }
  std::span<const double> amps() const { return amps_; }
  double operator[](std::size_t i) const { return amps_[i]; }

  friend bool operator==(const AmplitudeVector&, const AmplitudeVector&) = default;

 private:
  std::vector<double> amps_;
};

/// Non-negative entries summing to one (tolerance 1e-12).
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t dim() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  double max() const;
  /// Number of strictly positive entries.
  std::size_t support_size() const;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> probs_;
};

/// Hermitian, PSD, unit-trace dense matrix.
class DensityMatrix {
 public:
  /// Full validation: Hermitian within 1e-12, trace 1 within 1e-12,
  /// eigenvalues >= -1e-10.
  explicit DensityMatrix(Matrix m);

  /// Skips the eigenvalue check. For matrices that are density matrices by
  /// construction (tensor products, channel outputs, closed forms).
  static DensityMatrix trusted(Matrix m);

  static DensityMatrix pure(const AmplitudeVector& psi);
  static DensityMatrix diagonal(const ProbabilityVector& p);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  struct Trusted {};
  DensityMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// (1 - t^2) Psi_n + t^2 (I - Psi_n) / (n - 1), where Psi_n is the maximally
/// coherent state and t is the purified distance to it.
class IsotropicState {
 public:
  IsotropicState(std::size_t n, double t);

  std::size_t dim() const { return n_; }
  double t() const { return t_; }
  DensityMatrix to_density() const;

  friend bool operator==(const IsotropicState&, const IsotropicState&) = default;

 private:
  std::size_t n_;
  double t_;
};

using State = std::variant<AmplitudeVector, ProbabilityVector, DensityMatrix, IsotropicState>;

std::size_t dim(const State& s);
DensityMatrix to_density(const State& s);

/// Psi_n: all amplitudes 1/sqrt(n).
AmplitudeVector make_max_coherent(std::size_t n);

/// Largest embezzling catalyst that may be materialized.
inline constexpr std::uint64_t kMaxEmbezzlingDim = std::uint64_t{1} << 24;

/// sigma_m: amplitude j (1-based) is 1 / sqrt(j * H(m)).
AmplitudeVector make_embezzling(std::uint64_t m);

IsotropicState make_isotropic(std::size_t n, double t);

/// Diagonal in the incoherent basis.
ProbabilityVector dephase(const AmplitudeVector& psi);
ProbabilityVector dephase(const ProbabilityVector& p);
ProbabilityVector dephase(const DensityMatrix& rho);
ProbabilityVector dephase(const IsotropicState& iso);
ProbabilityVector dephase(const State& s);

/// Zero-pads to dimension n. Throws InvalidDimension if n < dim.
AmplitudeVector embed(const AmplitudeVector& psi, std::size_t n);
ProbabilityVector embed(const ProbabilityVector& p, std::size_t n);
DensityMatrix embed(const DensityMatrix& rho, std::size_t n);

AmplitudeVector tensor(const AmplitudeVector& a, const AmplitudeVector& b);
ProbabilityVector tensor(const ProbabilityVector& a, const ProbabilityVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// rho^{(x) k}; k = 0 gives the 1x1 identity.
DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t k);

// JSON form: {"kind": "amplitudes"|"probabilities"|"density", "dim": n,
// "data": [...]} where density data is a row-major list of [re, im] pairs;
// isotropic states are {"kind": "isotropic", "n": N, "t": t}.
nlohmann::json to_json(const State& s);
State state_from_json(const nlohmann::json& j);

}  // namespace cohcat
