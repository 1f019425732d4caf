#include "cohcat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohcat/channels.hpp"
#include "cohcat/error.hpp"
#include "cohcat/majorization.hpp"
#include "cohcat/metrics.hpp"
#include "cohcat/protocols.hpp"
#include "cohcat/random.hpp"

namespace cohcat::verify {

namespace {

CheckResult make(const std::string& suite, const std::string& check, double tolerance) {
  CheckResult c;
  c.suite = suite;
  c.check = check;
  c.tolerance = tolerance;
  return c;
}

std::size_t pick(random::Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(random::Engine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<CheckResult> metrics_suite(std::uint64_t seed) {
  random::Engine rng(seed);
  auto fvdg = make("metrics", "fuchs-van-de-graaf", 1e-10);
  auto triangle = make("metrics", "purified-triangle", 1e-10);
  auto multiplicative = make("metrics", "fidelity-multiplicativity", 1e-10);
  auto half = make("metrics", "sandwiched-half-equals-dmin", 1e-10);
  auto monotone = make("metrics", "renyi-monotone", 1e-10);

  for (int i = 0; i < 200; ++i) {
    const std::size_t d = pick(rng, 2, 4);
    const auto a = random::density(d, rng);
    const auto b = random::density(d, rng);
    const auto c = random::density(d, rng);
    const double f = fidelity(a, b);
    const double t = trace_distance(a, b);
    const double p = purified_distance(a, b);
    fvdg.observe(std::max(1.0 - f - t, t - p));
    triangle.observe(purified_distance(a, c) - purified_distance(a, b) - purified_distance(b, c));

    const auto e = random::density(pick(rng, 2, 3), rng);
    multiplicative.observe(std::abs(fidelity(tensor(a, e), tensor(b, e)) - f));

    half.observe(std::abs(sandwiched_divergence(a, b, 0.5).value - d_min(a, b).value));

    const auto prob = random::probability(pick(rng, 2, 6), rng);
    double prev = renyi_entropy(prob, 1e-3);
    for (int k = 1; k <= 64; ++k) {
      const double alpha = 1e-3 * std::pow(1e6, k / 64.0);
      const double s = renyi_entropy(prob, alpha);
      monotone.observe(s - prev);
      prev = s;
    }
  }
  return {fvdg, triangle, multiplicative, half, monotone};
}

std::vector<CheckResult> twirl_suite(std::uint64_t seed) {
  random::Engine rng(seed);
  auto check = make("twirl", "closed-form-vs-enumeration", 1e-12);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int i = 0; i < 100; ++i) {
      const auto rho = random::density(n, rng);
      const Matrix diff = twirl(rho).to_density().matrix() - brute_force_twirl(rho);
      check.observe(diff.cwiseAbs().maxCoeff());
    }
  }
  return {check};
}

std::vector<CheckResult> convex_split_suite(std::uint64_t seed) {
  random::Engine rng(seed);
  auto lemma = make("convex-split", "lemma-bound", 1e-10);
  auto channel = make("convex-split", "channel-equals-state", 1e-12);
  auto protocol = make("convex-split", "protocol-bound", 1e-9);

  for (int i = 0; i < 40; ++i) {
    const std::size_t n = pick(rng, 1, 5);
    const auto omega = random::density(2, rng);
    const auto sigma = random::density(2, rng);
    const auto tau = convex_split_state(omega, sigma, n);
    const double k = d_max(omega, sigma).value;
    lemma.observe(purified_distance(tau, tensor_power(sigma, n)) - std::sqrt(std::exp2(k) / static_cast<double>(n)));

    const auto mixed = apply(convex_split_channel(n, 2), tensor(omega, tensor_power(sigma, n - 1)));
    channel.observe((mixed.matrix() - tau.matrix()).cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = pick(rng, 1, 6);
    const double delta = uniform(rng, 0.2, 0.6);
    const auto rho = random::density(2, rng);
    const double k = d_max(twirl(rho), make_isotropic(2, delta)).value;
    protocol.observe(run_convex_split_small(rho, 2, delta, n) -
                     convex_split_error_bound(k, static_cast<double>(n), delta));
  }
  return {lemma, channel, protocol};
}

std::vector<CheckResult> embezzle_suite(std::uint64_t /*seed*/) {
  auto bound = make("embezzle", "fidelity-above-bound", 0.0);
  auto monotone = make("embezzle", "fidelity-monotone-in-m", 1e-12);
  auto modes = make("embezzle", "summation-equals-materialized", 1e-12);
  for (std::size_t n = 1; n <= 4; ++n) {
    double prev = 0.0;
    for (int j = 0; j <= 20; ++j) {
      const auto run = run_embezzling(std::uint64_t{1} << j, n);
      bound.observe(run.bound - run.achieved_fidelity);
      if (j > 0) monotone.observe(prev - run.achieved_fidelity);
      prev = run.achieved_fidelity;
      if (j <= 10) {
        const auto dense = run_embezzling(std::uint64_t{1} << j, n, EmbezzleMode::materialize);
        modes.observe(std::abs(dense.achieved_fidelity - run.achieved_fidelity));
      }
    }
  }
  return {bound, monotone, modes};
}

std::vector<CheckResult> majorization_suite(std::uint64_t seed) {
  random::Engine rng(seed);
  auto exact = make("majorization", "catalytic-n-equals-exact-rate", 0.0);
  auto trumping = make("majorization", "trumping-agrees-with-closed-form", 0.0);
  auto star_major = make("majorization", "psi-star-majorizes", 0.0);
  auto star_dist = make("majorization", "psi-star-distance", 1e-12);
  auto stability = make("majorization", "tensor-stability", 0.0);

  for (int i = 0; i < 200; ++i) {
    const std::size_t r = pick(rng, 2, 5);
    const auto phi = random::pure(r, r, rng);
    const auto cat = catalytic_max_n(phi);
    if (!cat.boundary) {
      exact.observe(std::abs(std::exp2(exact_distill_pure(phi)) - static_cast<double>(cat.n)));
      trumping.observe(std::abs(static_cast<double>(catalytic_max_n_by_trumping(phi)) - static_cast<double>(cat.n)));
    }

    const std::size_t n = pick(rng, 1, r);
    const double eps = uniform(rng, 0.0, 1.0 / static_cast<double>(r * (r - 1)));
    const auto star = construct_psi_star(n, r, eps);
    const auto p = dephase(phi);
    if (p.max() <= 1.0 / static_cast<double>(n) + eps) star_major.observe(majorizes(dephase(star), p) ? 0.0 : 1.0);
    star_dist.observe(purified_distance(embed(make_max_coherent(n), r), star) -
                      std::sqrt(static_cast<double>(n * (n - 1)) * eps));

    // q = doubly-stochastic image of p, so p majorizes q.
    const auto w = random::probability(pick(rng, 2, 3), rng);
    std::vector<double> q(r, 0.0);
    const double lambda = uniform(rng, 0.0, 1.0);
    for (std::size_t k = 0; k < r; ++k) q[k] = lambda * p[k] + (1.0 - lambda) * p[(k + 1) % r];
    const ProbabilityVector qv(q);
    stability.observe(majorizes(tensor(p, w), tensor(qv, w)) ? 0.0 : 1.0);
  }
  return {exact, trumping, star_major, star_dist, stability};
}

}  // namespace

void CheckResult::observe(double excess) {
  ++instances;
  max_excess = std::max(max_excess, excess);
  if (excess > tolerance) ++violations;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"metrics", "twirl", "convex-split", "embezzle", "majorization"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (name == "metrics") return metrics_suite(seed);
  if (name == "twirl") return twirl_suite(seed);
  if (name == "convex-split") return convex_split_suite(seed);
  if (name == "embezzle") return embezzle_suite(seed);
  if (name == "majorization") return majorization_suite(seed);
  throw InvalidParameter("unknown verification suite '" + name + "'");
}

Matrix brute_force_twirl(const DensityMatrix& rho) {
  const std::size_t n = rho.dim();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const auto d = static_cast<Eigen::Index>(n);
  Matrix sum = Matrix::Zero(d, d);
  std::size_t count = 0;
  do {
    Matrix p = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) p(static_cast<Eigen::Index>(perm[j]), static_cast<Eigen::Index>(j)) = 1.0;
    sum += p * rho.matrix() * p.adjoint();
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / static_cast<double>(count);
}

}  // namespace cohcat::verify
