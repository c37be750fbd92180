#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavfso/capacity.hpp"
#include "uavfso/cli/config.hpp"
#include "uavfso/cli/table.hpp"
#include "uavfso/sweep.hpp"

namespace uavfso::cli {

/// Parsed `param=lo:hi:n`.
struct SweepRange {
  SweepParameter parameter = SweepParameter::kBeamWidth;
  double lo = 0.0;
  double hi = 0.0;
  int count = 25;
};

/// Accepts `param=lo:hi:n` and `param=lo:hi` (n defaults to 25). Throws ConfigError.
SweepRange parse_sweep_range(const std::string& text);

/// Comma-separated path names. Throws ConfigError for an unknown name.
std::vector<CapacityPath> parse_paths(const std::string& text);

struct CommandOptions {
  std::vector<CapacityPath> paths;         ///< empty: the command's default
  std::optional<SweepRange> sweep;
  bool allow_out_of_range = false;
  bool refine = true;
  int threads = 0;
  int pdf_points = 200;
};

/// Result of a command: the table plus whether any row carries an error.
struct CommandOutput {
  OutputTable table;
  bool failed = false;
};

/// Metadata common to every command: tool version, path labels and the echoed config.
void add_run_metadata(OutputTable& t, const RunConfig& c, const std::vector<CapacityPath>& paths);

/// All requested paths at one point, with relative differences. Requires P_t.
CommandOutput run_eval(const RunConfig& c, const CommandOptions& o);
/// One row per grid point of o.sweep.
CommandOutput run_sweep(const RunConfig& c, const CommandOptions& o);
/// Capacity-maximizing value of the swept parameter on the first path.
CommandOutput run_optimize(const RunConfig& c, const CommandOptions& o);
/// Oracle-against-closed-form checks over the reference grid, one row per check.
CommandOutput run_validate(const RunConfig& c, const CommandOptions& o);
/// Outage mass and density samples on a logarithmic h grid.
CommandOutput run_pdf(const RunConfig& c, const CommandOptions& o);

}  // namespace uavfso::cli
