#include "cohcat/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cohcat/channels.hpp"
#include "cohcat/error.hpp"
#include "cohcat/majorization.hpp"
#include "cohcat/metrics.hpp"
#include "cohcat/protocols.hpp"
#include "cohcat/random.hpp"
#include "cohcat/verify.hpp"

namespace cohcat::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBoundSlack = 1e-9;

double parse_number(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw InvalidParameter("bad range '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<double> range_of(const SweepConfig& c, const std::string& flag, std::optional<std::string> fallback) {
  const auto it = c.ranges.find(flag);
  if (it != c.ranges.end()) return it->second.values();
  if (!fallback) throw InvalidParameter(std::string(command_name(c.command)) + " requires --" + flag);
  return parse_range(*fallback).values();
}

bool has(const SweepConfig& c, const std::string& flag) { return c.ranges.count(flag) != 0; }

std::int64_t as_count(double v, const std::string& flag, double lo, double hi) {
  if (v != std::floor(v) || v < lo || v > hi) {
    std::ostringstream msg;
    msg << "--" << flag << " takes integers in [" << lo << ", " << hi << "], got " << v;
    throw InvalidParameter(msg.str());
  }
  return static_cast<std::int64_t>(v);
}

std::string describe(const Table& t, const std::vector<Field>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ' ';
    s += t.columns[i].name + '=' + format_field(row[i]);
  }
  return s;
}

void flag(SweepResult& r, const std::string& why) {
  r.violations.push_back(why + ": " + describe(r.table, r.table.rows.back()));
}

SweepResult sweep_embezzle(const SweepConfig& c) {
  SweepResult r{{columns(c.command), {}}, {}};
  for (double nv : range_of(c, "n", "2")) {
    const auto n = static_cast<std::size_t>(as_count(nv, "n", 1, 1 << 20));
    for (double jv : range_of(c, "m-log2", std::nullopt)) {
      const auto j = as_count(jv, "m-log2", 0, 62);
      const std::uint64_t m = std::uint64_t{1} << j;
      const auto run = run_embezzling(m, n);
      const double margin = run.achieved_fidelity - run.bound;
      r.table.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(m), static_cast<double>(j),
                   run.achieved_fidelity, run.bound, margin});
      if (margin < 0.0) flag(r, "fidelity below bound");
    }
  }
  return r;
}

bool dense_fits(std::size_t n_target, std::uint64_t registers) {
  double dim = 1.0;
  for (std::uint64_t i = 0; i < registers; ++i) {
    dim *= static_cast<double>(n_target);
    if (dim > static_cast<double>(dense_cap())) return false;
  }
  return true;
}

SweepResult sweep_convex_split(const SweepConfig& c) {
  SweepResult r{{columns(c.command), {}}, {}};
  const bool fixed = has(c, "delta");
  if (fixed && has(c, "epsilon")) throw InvalidParameter("convex-split: --delta and --epsilon are exclusive");
  if (!fixed && (has(c, "gamma") || has(c, "n-registers"))) {
    throw InvalidParameter("convex-split: --gamma and --n-registers need --delta");
  }
  if (fixed && has(c, "gamma") == has(c, "n-registers")) {
    throw InvalidParameter("convex-split: give exactly one of --gamma and --n-registers with --delta");
  }

  for (double nv : range_of(c, "n", "2")) {
    const auto n = static_cast<std::size_t>(as_count(nv, "n", 1, 1 << 20));
    for (double t : range_of(c, "t", std::nullopt)) {
      const IsotropicState input(n, t);
      if (!fixed) {
        for (double eps : range_of(c, "epsilon", std::nullopt)) {
          const auto plan = plan_convex_split(t, n, eps);
          double achieved = kNaN;
          if (plan.trivial) {
            achieved = t;
          } else if (plan.n_registers.exact && dense_fits(n, *plan.n_registers.exact)) {
            achieved = run_convex_split_small(input.to_density(), n, plan.delta,
                                              static_cast<std::size_t>(*plan.n_registers.exact));
          }
          const char* kind = plan.trivial ? "trivial" : plan.boundary ? "boundary" : "convex-split";
          r.table.add({static_cast<std::int64_t>(n), eps, t, plan.delta, plan.gamma, plan.trivial ? kNaN : plan.k,
                       plan.n_registers.value, plan.log2_catalyst_dim, plan.error_bound, achieved, std::string(kind)});
          if (achieved > plan.error_bound + kBoundSlack) flag(r, "achieved distance above bound");
        }
        continue;
      }
      for (double delta : range_of(c, "delta", std::nullopt)) {
        const double k = d_max(input, IsotropicState(n, delta)).value;
        std::vector<double> counts;
        if (has(c, "n-registers")) {
          counts = range_of(c, "n-registers", std::nullopt);
        } else {
          for (double g : range_of(c, "gamma", std::nullopt)) {
            if (!(g > 0.0)) throw InvalidParameter("--gamma must be positive");
            const auto count = BigCount::ceil_of_pow2(k - 2.0 * std::log2(g));
            if (!count.exact) throw TooLarge("convex-split: register count does not fit in 63 bits");
            counts.push_back(static_cast<double>(*count.exact));
          }
        }
        for (double regs : counts) {
          const auto n_reg = static_cast<std::size_t>(as_count(regs, "n-registers", 1, 64));
          const double achieved = run_convex_split_small(input.to_density(), n, delta, n_reg);
          const double bound = convex_split_error_bound(k, static_cast<double>(n_reg), delta);
          const double gamma = std::sqrt(std::exp2(k) / static_cast<double>(n_reg));
          r.table.add({static_cast<std::int64_t>(n), kNaN, t, delta, gamma, k, static_cast<double>(n_reg),
                       static_cast<double>(n_reg - 1) * std::log2(static_cast<double>(n)), bound, achieved,
                       std::string("simulated")});
          if (achieved > bound + kBoundSlack) flag(r, "achieved distance above bound");
        }
      }
    }
  }
  return r;
}

SweepResult sweep_distill_pure(const SweepConfig& c) {
  SweepResult r{{columns(c.command), {}}, {}};
  random::Engine rng(c.seed);
  const auto epsilons = range_of(c, "epsilon", "0.01");
  for (double rv : range_of(c, "n", "2..5")) {
    const auto support = static_cast<std::size_t>(as_count(rv, "n", 1, 64));
    for (std::size_t s = 0; s < c.samples; ++s) {
      const auto phi = random::pure(support, support, rng);
      const double phi_max = dephase(phi).max();
      const double bits = exact_distill_pure(phi);
      const auto cat = catalytic_max_n(phi);
      for (double eps : epsilons) {
        if (!(eps >= 0.0)) throw InvalidParameter("--epsilon must be non-negative");
        double lower = kNaN;
        double upper = kNaN;
        if (static_cast<double>(support * (support - 1)) * eps <= 1.0) {
          std::tie(lower, upper) = smoothed_pc_bounds(phi, eps);
        }
        r.table.add({static_cast<std::int64_t>(s), static_cast<std::int64_t>(support), eps, phi_max, bits,
                     static_cast<std::int64_t>(cat.n), lower, upper});
        if (!cat.boundary && std::llround(std::exp2(bits)) != static_cast<long long>(cat.n)) {
          flag(r, "catalytic rate differs from exact rate");
        }
        if (lower > upper + 1e-12) flag(r, "lower bound above upper bound");
      }
    }
  }
  return r;
}

CatalystDim catalyst_for(double m_log2) {
  if (m_log2 == std::floor(m_log2) && m_log2 >= 0.0 && m_log2 <= 62.0) {
    return CatalystDim::of((std::uint64_t{1} << static_cast<int>(m_log2)) + 1);
  }
  return CatalystDim::from_log2(m_log2 + std::log1p(std::exp2(-m_log2)) / std::log(2.0));
}

SweepResult sweep_bounds(const SweepConfig& c) {
  SweepResult r{{columns(c.command), {}}, {}};
  for (double m_log2 : range_of(c, "m-log2", std::nullopt)) {
    if (!(m_log2 >= 0.0)) throw InvalidParameter("--m-log2 must be non-negative");
    const auto m = catalyst_for(m_log2);
    for (double eps : range_of(c, "epsilon", std::nullopt)) {
      for (double t : range_of(c, "t", "1")) {
        double lower = kNaN;
        double n_star = kNaN;
        try {
          lower = rc_lower_bound(m, eps);
          n_star = rc_log2_n_star(m, eps);
        } catch (const PreconditionViolation&) {
        }
        const auto est = rc_protocol_estimates(m_log2, eps, t);
        r.table.add({m_log2, eps, t, lower, n_star, est.convex_split, est.embezzling,
                     static_cast<std::int64_t>(est.warnings.empty())});
        if (t > eps && est.convex_split > est.embezzling) flag(r, "convex-split estimate above embezzling estimate");
      }
    }
  }
  return r;
}

SweepResult sweep_verify(const SweepConfig& c) {
  SweepResult r{{columns(c.command), {}}, {}};
  for (const auto& check : verify::run_suite(c.suite, c.seed)) {
    r.table.add({check.suite, check.check, check.instances, check.violations, check.max_excess});
    if (check.violations > 0) flag(r, "check failed");
  }
  return r;
}

Column integer(std::string name) { return {std::move(name), ColumnType::integer}; }
Column real(std::string name) { return {std::move(name), ColumnType::real}; }
Column text(std::string name) { return {std::move(name), ColumnType::text}; }

std::string column_help(Command cmd) {
  std::string s = "CSV columns:";
  for (const auto& col : columns(cmd)) s += " " + col.name;
  return s;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (unit_step) {
    for (double v = min; v <= max + 1e-9; v += 1.0) out.push_back(v);
    return out;
  }
  if (steps == 1) return {min};
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(i + 1 == steps ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

Range parse_range(std::string_view text) {
  Range r;
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    r.min = r.max = parse_number(text, text);
    return r;
  }
  r.min = parse_number(text.substr(0, dots), text);
  auto rest = text.substr(dots + 2);
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) {
    r.max = parse_number(rest, text);
    r.unit_step = true;
    r.steps = static_cast<std::size_t>(std::floor(r.max - r.min + 1e-9)) + 1;
  } else {
    r.max = parse_number(rest.substr(0, colon), text);
    const double k = parse_number(rest.substr(colon + 1), text);
    if (k < 1.0 || k != std::floor(k)) throw InvalidParameter("range step count must be a positive integer: '" + std::string(text) + "'");
    r.steps = static_cast<std::size_t>(k);
  }
  if (r.max < r.min) throw InvalidParameter("range upper end below lower end: '" + std::string(text) + "'");
  if (r.steps == 1 && r.min != r.max && !r.unit_step) {
    throw InvalidParameter("a one-point range needs equal ends: '" + std::string(text) + "'");
  }
  return r;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::embezzle: return "embezzle";
    case Command::convex_split: return "convex-split";
    case Command::distill_pure: return "distill-pure";
    case Command::bounds: return "bounds";
    case Command::verify: return "verify";
  }
  return "?";
}

std::vector<Column> columns(Command c) {
  switch (c) {
    case Command::embezzle:
      return {integer("n_target"), integer("m"), real("log2_m"), real("fidelity"), real("bound"), real("margin")};
    case Command::convex_split:
      return {integer("n_target"), real("epsilon"), real("t"),     real("delta"),    real("gamma"),   real("k"),
              real("n_registers"), real("log2_M"),  real("bound"), real("achieved"), text("protocol")};
    case Command::distill_pure:
      return {integer("sample"), integer("r"),          real("epsilon"), real("phi_max"),
              real("exact_bits"), integer("catalytic_n"), real("lower"),   real("upper")};
    case Command::bounds:
      return {real("m_log2"), real("epsilon"), real("t"),    real("rc_lower_bound"),
              real("log2_n_star"), real("p_cs"), real("p_eb"), integer("regime_ok")};
    case Command::verify:
      return {text("suite"), text("check"), integer("instances"), integer("violations"), real("max_excess")};
  }
  return {};
}

SweepResult run_sweep(const SweepConfig& config) {
  switch (config.command) {
    case Command::embezzle: return sweep_embezzle(config);
    case Command::convex_split: return sweep_convex_split(config);
    case Command::distill_pure: return sweep_distill_pure(config);
    case Command::bounds: return sweep_bounds(config);
    case Command::verify: return sweep_verify(config);
  }
  throw InvalidParameter("unknown command");
}

int emit(const SweepResult& result, Format format, std::ostream& out, std::ostream& err) {
  if (format == Format::csv) {
    write_csv(result.table, out);
  } else {
    write_json(result.table, out);
  }
  for (const auto& v : result.violations) err << "violation: " << v << '\n';
  return result.violations.empty() ? 0 : 1;
}

int run(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return emit(run_sweep(config), config.format, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence distillation planners, simulators and property sweeps", "cohcat"};
  app.require_subcommand(1);

  SweepConfig config;
  std::map<std::string, std::string> raw;
  std::string format = "csv";
  std::string out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write records to this file instead of stdout");
  };
  auto range = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, raw[name], help + " (a, a..b or a..b:k)");
  };

  struct Sub {
    Command cmd;
    CLI::App* app;
  };
  std::vector<Sub> subs;

  auto* emb = app.add_subcommand("embezzle", "exact fidelity of the embezzling protocol against its bound");
  range(emb, "n", "target dimension N, default 2");
  range(emb, "m-log2", "log2 of the catalyst dimension M, integer");
  subs.push_back({Command::embezzle, emb});

  auto* cs = app.add_subcommand("convex-split", "plan or simulate the twirl + convex-split protocol");
  range(cs, "n", "target dimension N, default 2");
  range(cs, "t", "purified distance of the input to Psi_N");
  range(cs, "epsilon", "target error; plans the protocol");
  range(cs, "delta", "isotropic catalyst parameter; simulates with fixed parameters");
  range(cs, "gamma", "register count from ceil(2^k / gamma^2), with --delta");
  range(cs, "n-registers", "register count, with --delta");
  subs.push_back({Command::convex_split, cs});

  auto* dp = app.add_subcommand("distill-pure", "random pure states: exact, catalytic and smoothed rates");
  range(dp, "n", "support size r, default 2..5");
  range(dp, "epsilon", "smoothing, default 0.01");
  dp->add_option("--samples", config.samples, "states per support size")->check(CLI::PositiveNumber);
  dp->add_option("--seed", config.seed, "random seed");
  subs.push_back({Command::distill_pure, dp});

  auto* bd = app.add_subcommand("bounds", "restricted-catalyst rate bound and protocol estimates, M = 2^m + 1");
  range(bd, "m-log2", "log2 (M - 1)");
  range(bd, "epsilon", "smoothing");
  range(bd, "t", "input distance for the estimates, default 1");
  subs.push_back({Command::bounds, bd});

  auto* vf = app.add_subcommand("verify", "seeded randomized property suites");
  vf->add_option("--suite", config.suite, "suite name")
      ->check(CLI::IsMember({"all", "metrics", "twirl", "convex-split", "embezzle", "majorization"}));
  vf->add_option("--seed", config.seed, "random seed");
  subs.push_back({Command::verify, vf});

  for (const auto& s : subs) {
    common(s.app);
    s.app->footer(column_help(s.cmd));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  for (const auto& s : subs)
    if (s.app->parsed()) config.command = s.cmd;
  config.format = format == "json" ? Format::json : Format::csv;

  try {
    for (const auto& [name, text] : raw)
      if (!text.empty()) config.ranges[name] = parse_range(text);

    if (out_path.empty()) return run(config, out, err);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << out_path << '\n';
      return 2;
    }
    return run(config, file, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cohcat::cli
