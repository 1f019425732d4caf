#pragma once

// Incoherent operations as executable maps.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cohcat/states.hpp"

namespace cohcat {

/// Default cap on the total dimension of dense tensor-product states.
inline constexpr std::size_t kDefaultDenseCap = 4096;

/// The cap in effect: COHCAT_DENSE_CAP if set to a positive integer,
/// otherwise kDefaultDenseCap.
std::size_t dense_cap();

/// General channel given by Kraus operators; sum K^dagger K = I within 1e-10.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }

 private:
  std::vector<Matrix> ops_;
  std::size_t in_dim_;
  std::size_t out_dim_;
};

/// A permutation of {0..n-1} stored as an index map: basis state |j> goes
/// to |perm[j]>.
using Permutation = std::vector<std::size_t>;

/// Convex combination of basis permutations. Permutations are kept as index
/// arrays; dense Kraus operators are only built on request.
class PermutationMixture {
 public:
  PermutationMixture(std::size_t n, std::vector<std::pair<Permutation, double>> terms);

  std::size_t dim() const { return n_; }
  const std::vector<std::pair<Permutation, double>>& terms() const { return terms_; }

  /// sqrt(p_i) P_i for every term.
  std::vector<Matrix> kraus_ops() const;

 private:
  std::size_t n_;
  std::vector<std::pair<Permutation, double>> terms_;
};

/// sum_k K rho K^dagger.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);
/// sum_i p_i P_i rho P_i^dagger, computed by index relabeling.
DensityMatrix apply(const PermutationMixture& channel, const DensityMatrix& rho);

/// Every column has at most one nonzero entry (magnitude > 1e-12).
bool is_incoherent_kraus(const Matrix& k);
/// Both k and k^dagger are incoherent-preserving: at most one nonzero per
/// column and per row.
bool is_sio_kraus(const Matrix& k);

/// Average of P rho P^dagger over all n! basis permutations, in closed form.
/// The result has t^2 = 1 - <Psi_n|rho|Psi_n>.
IsotropicState twirl(const DensityMatrix& rho);

/// (1/n) sum_j sigma^{(x) j-1} (x) omega (x) sigma^{(x) n-j}.
/// Throws TooLarge when local_dim^n exceeds dense_cap().
DensityMatrix convex_split_state(const DensityMatrix& omega, const DensityMatrix& sigma, std::size_t n);

/// Uniform mixture of the register swaps SWAP(1, j), j = 1..n, on n
/// registers of dimension local_dim. Register 1 is the most significant
/// digit of the joint index, matching the Kronecker order of tensor().
PermutationMixture convex_split_channel(std::size_t n, std::size_t local_dim);

}  // namespace cohcat
