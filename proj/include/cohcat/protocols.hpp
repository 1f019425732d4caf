#pragma once

// Planners and simulators for the two coherence-embezzling protocols and the
// restricted-catalyst estimates.
//
// Catalyst dimensions and register counts grow like N^(16 t^2 / eps^4) and
// (2N)^(2 / eps^2), so they are carried as base-2 logarithms and only
// materialized as integers when they fit in 63 bits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohcat/channels.hpp"
#include "cohcat/states.hpp"

namespace cohcat {

/// A possibly astronomically large positive count.
struct BigCount {
  std::optional<std::uint64_t> exact;  // present when the count is <= 2^63
  double value = 0.0;                  // the count as a real (may be inf)
  double log2 = 0.0;                   // log2 of the count

  static BigCount from_exact(std::uint64_t n);
  /// ceil(2^log2_x), snapping to the nearest integer first when within
  /// 1e-9 relative so that exact ratios are not pushed up by rounding.
  static BigCount ceil_of_pow2(double log2_x);
};

struct ProtocolPlan {
  std::size_t n_target = 0;
  double epsilon = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double k = 0.0;  // D_max(twirled input || sigma_N), bits
  BigCount n_registers;
  double log2_catalyst_dim = 0.0;  // (n_registers - 1) log2 N
  double error_bound = 0.0;        // delta + gamma
  /// t < epsilon: the twirled input is already within epsilon of Psi_N, so
  /// no catalyst is needed (n_registers = 1).
  bool trivial = false;
  /// t == epsilon: on the edge of the trivial region; the full plan is still
  /// returned.
  bool boundary = false;
};

/// Convex-split plan with delta = gamma = epsilon / 2:
/// k = log(t^2 / delta^2), n = ceil(t^2 / (gamma^2 delta^2)),
/// log2 M = (n - 1) log2 N.
ProtocolPlan plan_convex_split(double t, std::size_t n_target, double epsilon);

/// sqrt(2^k / n) + delta: the guaranteed error of the convex-split protocol
/// once the register count is fixed.
double convex_split_error_bound(double k, double n_registers, double delta);

/// Runs twirl -> convex-split channel on rho (x) sigma_N^{(x) n-1} with
/// sigma_N = IsotropicState(N, delta) and returns the exact purified
/// distance to Psi_N (x) sigma_N^{(x) n-1}. rho is zero-padded to N if
/// smaller. Throws TooLarge past the dense cap.
double run_convex_split_small(const DensityMatrix& rho, std::size_t n_target, double delta,
                              std::size_t n_registers);

struct EmbezzlePlan {
  double log2_m = 0.0;  // log2 of the un-ceiled (2N)^(2/eps^2) / 2
  std::optional<std::uint64_t> m;  // ceil(...) when log2_m <= 63
  bool exact() const { return m.has_value(); }
};

/// Catalyst dimension M = ceil((2N)^(2 eps^-2) / 2) sufficient to embezzle
/// Psi_N within purified distance eps. Needs N >= 2 and 0 < eps <= 1.
EmbezzlePlan plan_embezzling(std::size_t n_target, double epsilon);

struct EmbezzleRun {
  std::uint64_t m = 0;
  std::size_t n_target = 0;
  double achieved_fidelity = 0.0;
  /// max(0, 1 - (1 + log N) / (1 + log M)).
  double bound = 0.0;
  bool permutation_applied = false;
};

enum class EmbezzleMode {
  summation,    // closed-form series, any m
  materialize,  // explicit vectors and the sorting permutation, m * N <= 2^24
};

/// Fidelity between sigma_M (x) |1> and omega, the non-increasing
/// rearrangement of sigma_M (x) Psi_N. The protocol discards the input
/// state, so the optional initial state is accepted and ignored.
EmbezzleRun run_embezzling(std::uint64_t m, std::size_t n_target, EmbezzleMode mode = EmbezzleMode::summation,
                           const std::optional<State>& initial_state = std::nullopt);

/// Incoherent permutation U_P with U_P omega = sigma_M (x) Psi_N, as an
/// index map over the joint basis |j>|i> -> j * N + i (catalyst first).
/// omega places its s-th largest coefficient (ties in index order) at
/// position (s mod M) * N + s / M.
Permutation embezzling_permutation(std::uint64_t m, std::size_t n_target);

/// The rearranged state omega in the joint basis.
AmplitudeVector embezzling_omega(std::uint64_t m, std::size_t n_target);

/// Catalyst dimension given either exactly or by its base-2 logarithm.
struct CatalystDim {
  std::optional<std::uint64_t> exact;
  double log2 = 0.0;

  static CatalystDim of(std::uint64_t m);
  static CatalystDim from_log2(double log2_m);
  /// log2(M - 1), exact for integer M and via log1p otherwise.
  double log2_minus_one() const;
};

/// (1/2) eps^2 (log(M-1) + 1) - 2. Requires eps^2 log(M-1) / 4 >= 1.
double rc_lower_bound(const CatalystDim& m, double epsilon);

/// log2 of N* = floor(2^((1/2) eps^2 (log(M-1) + 1) - 1)), the achievable
/// target dimension behind rc_lower_bound. Same precondition.
double rc_log2_n_star(const CatalystDim& m, double epsilon);

struct RegimeThresholds {
  double max_epsilon = 0.3;
  double min_eps2_log_m = 10.0;
};

struct ProtocolEstimates {
  double convex_split = 0.0;  // (eps^4 / (16 t^2)) log M
  double embezzling = 0.0;    // (1/2) eps^2 log M
  std::vector<std::string> warnings;
};

/// Large-catalyst estimates of the two protocols' rates. Values are always
/// returned; warnings are attached when eps or eps^2 log M fall outside the
/// regime the estimates assume.
ProtocolEstimates rc_protocol_estimates(double m_log2, double epsilon, double t, const RegimeThresholds& regime = {});

}  // namespace cohcat
