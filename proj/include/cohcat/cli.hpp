#pragma once

// Sweep driver behind the `cohcat` executable. Each command expands its
// parameter ranges into a grid, evaluates one record per grid point and
// writes the records as CSV or JSON.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cohcat/table.hpp"

namespace cohcat::cli {

enum class Command { embezzle, convex_split, distill_pure, bounds, verify };
enum class Format { csv, json };

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Inclusive parameter range. Syntax: "a" (one point), "a..b" (unit steps
/// from a up to b) or "a..b:k" (k evenly spaced points from a to b).
struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;
  bool unit_step = false;

  std::vector<double> values() const;
};

/// Throws InvalidParameter on malformed text.
Range parse_range(std::string_view text);

struct SweepConfig {
  Command command = Command::embezzle;
  std::map<std::string, Range> ranges;  // keyed by flag name without dashes
  Format format = Format::csv;
  std::uint64_t seed = kDefaultSeed;
  std::string suite = "all";
  std::size_t samples = 20;
};

struct SweepResult {
  Table table;
  /// Empty when every record passed its invariant check.
  std::vector<std::string> violations;
};

std::string_view command_name(Command c);
std::vector<Column> columns(Command c);

/// Evaluates the sweep. Library errors for invalid parameters propagate.
SweepResult run_sweep(const SweepConfig& config);

/// Writes the records to out and one "violation:" line per failed record to
/// err. Returns 0, or 1 if there were violations.
int emit(const SweepResult& result, Format format, std::ostream& out, std::ostream& err);

/// run_sweep followed by emit.
int run(const SweepConfig& config, std::ostream& out, std::ostream& err);

/// Full command line (without the program name). Exit codes: 0 success,
/// 1 invariant violation, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohcat::cli
