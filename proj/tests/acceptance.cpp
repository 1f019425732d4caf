// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cohcat/channels.hpp"
#include "cohcat/majorization.hpp"
#include "cohcat/metrics.hpp"
#include "cohcat/protocols.hpp"
#include "oracles.hpp"

using namespace cohcat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double max_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (max_seconds > 0 && secs >= max_seconds) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(max_seconds) + " s budget)";
  }
  if (!o.ok) ++failures;
  std::printf("%s  %d  %-44s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

AmplitudeVector from_probs(const std::vector<double>& p) {
  std::vector<double> a(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) a[i] = std::sqrt(p[i]);
  return AmplitudeVector(a);
}

}  // namespace

int main() {
  criterion(1, "convex-split lemma, isotropic pair", 1.0, [] {
    Outcome o;
    const auto omega = make_isotropic(2, 0.8);
    const auto sigma = make_isotropic(2, 0.4);
    const double k = d_max(omega, sigma).value;
    const double k_dense = d_max(omega.to_density(), sigma.to_density()).value;
    const double expect = std::log2(0.64 / 0.16);
    if (std::abs(k - expect) > 1e-10 || std::abs(k_dense - expect) > 1e-10) o.ok = false;
    double worst = -1;
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto tau = convex_split_state(omega.to_density(), sigma.to_density(), n);
      const double p = purified_distance(tau, tensor_power(sigma.to_density(), n));
      const double bound = std::sqrt(std::exp2(k) / n);
      worst = std::max(worst, p - bound);
      if (p > bound + 1e-9) o.ok = false;
    }
    o.detail = "k=" + fmt(k) + " dense k=" + fmt(k_dense) + " max(P - bound)=" + fmt(worst);
    return o;
  });

  criterion(2, "convex-split protocol end to end, n=7", 5.0, [] {
    const auto rho = twirl(make_isotropic(2, 0.8).to_density()).to_density();
    const double p = run_convex_split_small(rho, 2, 0.4, 7);
    const double bound = std::sqrt(4.0 / 7.0) + 0.4;
    return Outcome{p <= bound + 1e-9, "P=" + fmt(p) + " bound=" + fmt(bound)};
  });

  criterion(3, "embezzling fidelity bound, N=2, M=2^1..2^20", 2.0, [] {
    Outcome o;
    double prev = 0, worst = 1;
    for (int j = 1; j <= 20; ++j) {
      const auto run = run_embezzling(std::uint64_t{1} << j, 2);
      const double bound = 1 - 2.0 / (1 + j);
      worst = std::min(worst, run.achieved_fidelity - bound);
      if (run.achieved_fidelity < bound || run.achieved_fidelity < prev) o.ok = false;
      prev = run.achieved_fidelity;
    }
    const double f8 = run_embezzling(8, 2).achieved_fidelity;
    const double exact = oracle::embezzle_fidelity(8, 2);
    if (std::abs(f8 - 0.86599) > 1e-4 || std::abs(f8 - exact) > 1e-12) o.ok = false;
    o.detail = "F(8,2)=" + fmt(f8) + " oracle=" + fmt(exact) + " min margin=" + fmt(worst);
    return o;
  });

  criterion(4, "twirl closed form vs permutation average", 0, [] {
    oracle::Gen gen(404);
    double worst = 0;
    for (std::size_t n = 2; n <= 4; ++n)
      for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho(gen.density(n));
        worst = std::max(worst, (twirl(rho).to_density().matrix() - oracle::twirl(rho.matrix())).cwiseAbs().maxCoeff());
      }
    return Outcome{worst <= 1e-12, "max entry error=" + fmt(worst) + " over 300 states"};
  });

  criterion(5, "exact and catalytic pure-state rates", 0, [] {
    oracle::Gen gen(505);
    int mismatches = 0, instances = 0, trumping_checks = 0;
    while (instances < 1000) {
      const std::size_t r = gen.index(2, 5);
      const auto p = gen.simplex(r);
      const double top = *std::max_element(p.begin(), p.end());
      if (top <= 1.0 / r + 1e-9) continue;  // skip (near) maximally coherent
      ++instances;
      const auto phi = from_probs(p);
      const auto floor_inv = static_cast<std::size_t>(std::floor(1 / top));
      const auto cat = catalytic_max_n(phi);
      if (cat.boundary || cat.n != floor_inv || std::exp2(exact_distill_pure(phi)) != static_cast<double>(floor_inv)) {
        ++mismatches;
      }
      for (std::size_t n = 2; n <= r; ++n) {
        std::vector<double> target(r, 0.0);
        for (std::size_t i = 0; i < n; ++i) target[i] = 1.0 / n;
        const bool closed_form = top <= 1.0 / n;
        const auto v = trumps(ProbabilityVector(p), ProbabilityVector(target));
        ++trumping_checks;
        if ((v.verdict != Verdict::no) != closed_form) ++mismatches;
      }
    }
    return Outcome{mismatches == 0, std::to_string(instances) + " states, " + std::to_string(trumping_checks) +
                                        " trumping verdicts, mismatches=" + std::to_string(mismatches)};
  });

  criterion(6, "Psi* majorizes and stays within sqrt(N(N-1)eps)", 0, [] {
    oracle::Gen gen(606);
    int bad = 0, majorization_checks = 0, grid_points = 0;
    double worst = -1;
    for (std::size_t r = 2; r <= 5; ++r) {
      const double eps_max = 1.0 / (r * (r - 1.0));
      for (std::size_t n = 1; n <= r; ++n)
        for (int s = 0; s < 10; ++s) {
          const double eps = eps_max * s / 9.0;
          ++grid_points;
          const auto star = construct_psi_star(n, r, eps);
          const auto star_probs = dephase(star);
          const std::vector<double> target(star_probs.probs().begin(), star_probs.probs().end());
          const double gap = purified_distance(embed(make_max_coherent(n), r), star) - std::sqrt(n * (n - 1.0) * eps);
          worst = std::max(worst, gap);
          if (gap > 1e-12) ++bad;
          for (int k = 0; k < 200; ++k) {
            // Mix a random vector toward uniform so many samples qualify.
            auto p = gen.simplex(r);
            const double lambda = gen.uniform();
            for (auto& x : p) x = lambda * x + (1 - lambda) / r;
            if (*std::max_element(p.begin(), p.end()) > 1.0 / n + eps) continue;
            ++majorization_checks;
            if (!oracle::prefix_dominates(target, p)) ++bad;
          }
        }
    }
    return Outcome{bad == 0, std::to_string(grid_points) + " grid points, " + std::to_string(majorization_checks) +
                                 " majorization checks, max(P - bound)=" + fmt(worst) + ", failures=" + std::to_string(bad)};
  });

  criterion(7, "restricted-catalyst bound and estimates", 0, [] {
    Outcome o;
    const double lb = rc_lower_bound(CatalystDim::of((std::uint64_t{1} << 16) + 1), 0.5);
    if (lb != 0.125) o.ok = false;
    int checked = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double eps = 0.01 + 0.29 * i / 9.0;
        const double t = 0.05 + 0.95 * j / 9.0;
        if (!(t > eps)) continue;
        ++checked;
        const auto e = rc_protocol_estimates(1000, eps, t);
        if (e.convex_split > e.embezzling) o.ok = false;
      }
    o.detail = "rc_lower_bound=" + fmt(lb) + ", P_cs <= P_eb on " + std::to_string(checked) + " grid points with t > eps";
    return o;
  });

  criterion(8, "metric property suite, 200 instances each", 10.0, [] {
    oracle::Gen gen(808);
    double fvdg = -1, tri = -1, mult = 0, half = 0, mono = -1;
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = gen.index(2, 4);
      const DensityMatrix a(gen.density(n)), b(gen.density(n)), c(gen.density(n)), e(gen.density(2));
      const double f = fidelity(a, b), t = trace_distance(a, b), p = purified_distance(a, b);
      fvdg = std::max({fvdg, 1 - f - t, t - p});
      tri = std::max(tri, purified_distance(a, c) - p - purified_distance(b, c));
      mult = std::max(mult, std::abs(fidelity(tensor(a, e), tensor(b, e)) - f));
      half = std::max(half, std::abs(sandwiched_divergence(a, b, 0.5).value - d_min(a, b).value));
      const ProbabilityVector q(gen.simplex(gen.index(2, 8)));
      double prev = renyi_entropy(q, 1e-3);
      for (int k = 1; k <= 64; ++k) {
        const double s = renyi_entropy(q, 1e-3 * std::pow(1e7, k / 64.0));
        mono = std::max(mono, s - prev);
        prev = s;
      }
    }
    const double tol = 1e-10;
    const bool ok = fvdg <= tol && tri <= tol && mult <= tol && half <= tol && mono <= tol;
    return Outcome{ok, "excess: fvdg=" + fmt(fvdg) + " triangle=" + fmt(tri) + " mult=" + fmt(mult) +
                           " half=" + fmt(half) + " monotone=" + fmt(mono)};
  });

  criterion(9, "trumping regression vector", 0, [] {
    const ProbabilityVector p({0.4, 0.4, 0.1, 0.1});
    const ProbabilityVector q({0.5, 0.25, 0.25, 0.0});
    const bool plain = majorizes(q, p);
    const auto v = trumps(p, q);
    const std::vector<double> w{0.6, 0.4};
    const bool catalysed = oracle::prefix_dominates(oracle::outer({0.5, 0.25, 0.25, 0.0}, w), oracle::outer({0.4, 0.4, 0.1, 0.1}, w));
    const bool ok = !plain && v.verdict == Verdict::yes && catalysed;
    return Outcome{ok, std::string("majorized=") + (plain ? "yes" : "no") + " trumps=" +
                           (v.verdict == Verdict::yes ? "yes" : v.verdict == Verdict::no ? "no" : "boundary") +
                           " min gap=" + fmt(v.min_gap) + " catalyst [0.6,0.4] works=" + (catalysed ? "yes" : "no")};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
