#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "uavfso/cli/commands.hpp"
#include "uavfso/cli/config.hpp"
#include "uavfso/cli/table.hpp"

namespace {

// Exit codes: 0 success, 1 at least one row carries an error, 2 bad input or I/O failure.
int fail(const std::string& reason, int code) {
  std::string line = reason;
  for (char& ch : line) {
    if (ch == '\n') ch = ' ';
  }
  std::cerr << "error: " << line << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uavfso::cli;
  CLI::App app{"Ergodic capacity of a hovering UAV-to-UAV optical link"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string sweep_text;
  std::string paths_text;
  std::string out_path;
  bool allow_out_of_range = false;
  bool no_refine = false;
  int threads = 0;
  int points = 200;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file of 'key = value unit' lines");
    sub->add_option("--set", overrides, "override one key, e.g. --set 'P_t=10 dBm'");
    sub->add_option("--out", out_path, "CSV destination (default stdout)");
  };
  auto* eval = app.add_subcommand("eval", "all capacity paths at one operating point");
  auto* sweep = app.add_subcommand("sweep", "capacity over a parameter grid");
  auto* optimize = app.add_subcommand("optimize", "capacity-maximizing value of one parameter");
  auto* validate = app.add_subcommand("validate", "closed form against its quadrature oracles");
  auto* pdf = app.add_subcommand("pdf", "outage mass and channel density samples");
  for (auto* sub : {eval, sweep, optimize, validate, pdf}) common(sub);
  for (auto* sub : {eval, sweep, optimize}) {
    sub->add_option("--paths", paths_text, "comma-separated: exact,oracle,oracle_q,closed,largefov");
  }
  for (auto* sub : {sweep, optimize}) {
    sub->add_option("--sweep", sweep_text, "param=lo:hi:n with param in w_z [m], theta_fov [mrad], P_t [dBm], sigma_theta [mrad]")
        ->required();
    sub->add_flag("--allow-out-of-range", allow_out_of_range, "permit ranges outside the design envelope");
  }
  sweep->add_option("--threads", threads, "worker threads (0: all cores)");
  optimize->add_flag("--no-refine", no_refine, "report the grid maximum without golden-section refinement");
  pdf->add_option("--points", points, "h grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(e.what(), 2);
  }

  try {
    const RunConfig config = load_config(config_path, overrides);
    CommandOptions opts;
    if (!paths_text.empty()) opts.paths = parse_paths(paths_text);
    if (!sweep_text.empty()) opts.sweep = parse_sweep_range(sweep_text);
    opts.allow_out_of_range = allow_out_of_range;
    opts.refine = !no_refine;
    opts.threads = threads;
    opts.pdf_points = points;

    CommandOutput result{OutputTable({})};
    if (eval->parsed()) result = run_eval(config, opts);
    else if (sweep->parsed()) result = run_sweep(config, opts);
    else if (optimize->parsed()) result = run_optimize(config, opts);
    else if (validate->parsed()) result = run_validate(config, opts);
    else result = run_pdf(config, opts);

    emit(result.table, out_path);
    if (result.failed) return fail("one or more rows carry an error marker", 1);
    return 0;
  } catch (const std::exception& e) {
    return fail(e.what(), 2);
  }
}
