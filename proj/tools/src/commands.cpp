#include "uavfso/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uavfso/closed_form.hpp"
#include "uavfso/error.hpp"
#include "uavfso/kernel.hpp"

#ifndef UAVFSO_VERSION
#define UAVFSO_VERSION "unknown"
#endif

namespace uavfso::cli {
namespace {

constexpr double kReferencePowerDbm = 10.0;

double parse_number(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(what + ": cannot read a number from '" + std::string(s) + "'");
  }
  return v;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t j = 0; j < parts.size(); ++j) out += (j ? sep : "") + parts[j];
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void require_power(const RunConfig& c, const std::string& command) {
  if (!c.transmit_power_set) throw ConfigError(command + ": P_t must be given (e.g. --set 'P_t=10 dBm')");
}

const SweepRange& require_sweep(const CommandOptions& o, const std::string& command) {
  if (!o.sweep) throw ConfigError(command + ": --sweep param=lo:hi:n is required");
  return *o.sweep;
}

SweepSpec make_spec(const RunConfig& c, const CommandOptions& o, const SweepRange& r) {
  SweepSpec s;
  s.parameter = r.parameter;
  s.lo = r.lo;
  s.hi = r.hi;
  s.count = r.count;
  s.base = {c.link, c.noise};
  s.paths = o.paths;
  s.allow_out_of_range = o.allow_out_of_range;
  s.threads = o.threads;
  return s;
}

std::vector<CapacityPath> paths_or(const CommandOptions& o, std::vector<CapacityPath> fallback) {
  return o.paths.empty() ? fallback : o.paths;
}

}  // namespace

SweepRange parse_sweep_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--sweep: expected param=lo:hi:n, got '" + text + "'");
  const std::string name = text.substr(0, eq);
  const auto p = parse_parameter(name);
  if (!p) throw ConfigError("--sweep: unknown parameter '" + name + "' (w_z, theta_fov, P_t, sigma_theta)");
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 2 && parts.size() != 3) throw ConfigError("--sweep: expected param=lo:hi:n, got '" + text + "'");
  SweepRange r;
  r.parameter = *p;
  r.lo = parse_number(parts[0], "--sweep lo");
  r.hi = parse_number(parts[1], "--sweep hi");
  if (parts.size() == 3) {
    const double n = parse_number(parts[2], "--sweep n");
    if (n < 0 || n != std::floor(n) || n > 100000) throw ConfigError("--sweep: n must be a non-negative integer");
    r.count = static_cast<int>(n);
  }
  if (r.lo > r.hi) throw ConfigError("--sweep: lo must not exceed hi");
  return r;
}

std::vector<CapacityPath> parse_paths(const std::string& text) {
  std::vector<CapacityPath> out;
  std::stringstream ss(text);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name.empty()) continue;
    const auto p = parse_path(name);
    if (!p) throw ConfigError("--paths: unknown path '" + name + "' (exact, oracle, oracle_q, closed, largefov)");
    if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
  }
  if (out.empty()) throw ConfigError("--paths: no path given");
  return out;
}

void add_run_metadata(OutputTable& t, const RunConfig& c, const std::vector<CapacityPath>& paths) {
  t.add_metadata("tool", std::string("uavfso ") + UAVFSO_VERSION);
  std::vector<std::string> names;
  for (auto p : paths) names.emplace_back(path_name(p));
  if (!names.empty()) t.add_metadata("paths", join(names, " "));
  for (const auto& line : echo_config(c)) t.add_metadata("config", line);
}

CommandOutput run_eval(const RunConfig& c, const CommandOptions& o) {
  require_power(c, "eval");
  const auto paths = paths_or(o, {kAllPaths.begin(), kAllPaths.end()});
  CommandOutput out{OutputTable({"path", "capacity_bits", "capacity_nats", "rel_delta_exact", "rel_delta_closed", "status"})};
  add_run_metadata(out.table, c, paths);
  out.table.add_metadata("snr_at_peak_gain", fmt(snr_at_peak_gain(c.link, c.noise)));

  CapacityReport report;
  std::vector<std::string> errors(kAllPaths.size());
  for (auto p : paths) {
    try {
      const std::array<CapacityPath, 1> one{p};
      const auto r = evaluate_capacity(c.link, c.noise, one);
      report.nats[static_cast<std::size_t>(p)] = r.nats[static_cast<std::size_t>(p)];
      if (r.i_terms) report.i_terms = r.i_terms;
      for (const auto& w : r.warnings) {
        if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) report.warnings.push_back(w);
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(p)] = e.what();
    }
  }
  if (report.i_terms) {
    out.table.add_metadata("I11_nats", fmt(report.i_terms->i11));
    out.table.add_metadata("I12_nats", fmt(report.i_terms->i12));
    out.table.add_metadata("I21_nats", fmt(report.i_terms->i21));
    out.table.add_metadata("I22_nats", fmt(report.i_terms->i22));
  }
  for (const auto& w : report.warnings) out.table.add_metadata("warning", w);
  auto delta = [&](CapacityPath x, CapacityPath ref) -> Cell {
    if (!report.has(x) || !report.has(ref)) return {};
    return report.relative_delta(x, ref);
  };
  for (auto p : paths) {
    const auto& err = errors[static_cast<std::size_t>(p)];
    if (!err.empty()) {
      out.failed = true;
      out.table.add_row({std::string(path_name(p)), {}, {}, {}, {}, "error: " + err});
      continue;
    }
    out.table.add_row({std::string(path_name(p)), report.value_bits(p), report.value_nats(p),
                       delta(p, CapacityPath::kExact), delta(p, CapacityPath::kClosed), "ok"});
  }
  return out;
}

CommandOutput run_sweep(const RunConfig& c, const CommandOptions& o) {
  const SweepRange& r = require_sweep(o, "sweep");
  if (r.parameter != SweepParameter::kTransmitPower) require_power(c, "sweep");
  CommandOptions opts = o;
  opts.paths = paths_or(o, {CapacityPath::kExact, CapacityPath::kClosed});
  std::vector<std::string> cols{std::string(parameter_name(r.parameter)) + "_" + std::string(parameter_unit(r.parameter))};
  for (auto p : opts.paths) {
    cols.push_back(std::string(path_name(p)) + "_bits");
    cols.push_back(std::string(path_name(p)) + "_nats");
  }
  cols.emplace_back("warnings");
  cols.emplace_back("status");
  CommandOutput out{OutputTable(cols)};
  add_run_metadata(out.table, c, opts.paths);
  out.table.add_metadata("sweep", std::string(parameter_name(r.parameter)) + " " + fmt(r.lo) + ":" + fmt(r.hi) + ":" +
                                      std::to_string(r.count) + " " + std::string(parameter_unit(r.parameter)));
  if (r.count == 0) return out;

  const auto result = grid_sweep(make_spec(c, opts, r));
  for (auto p : opts.paths) {
    if (auto j = result.argmax(p)) {
      out.table.add_metadata("argmax_" + std::string(path_name(p)), fmt(result.rows[*j].value));
    }
  }
  for (const auto& row : result.rows) {
    std::vector<Cell> cells{row.value};
    for (auto p : opts.paths) {
      const auto& b = row.bits[static_cast<std::size_t>(p)];
      if (b) {
        cells.emplace_back(*b);
        cells.emplace_back(*b * std::numbers::ln2);
      } else {
        cells.emplace_back();
        cells.emplace_back();
      }
    }
    cells.emplace_back(join(row.warnings, "; "));
    cells.emplace_back(row.ok() ? std::string("ok") : "error: " + row.error);
    out.failed = out.failed || !row.ok();
    out.table.add_row(std::move(cells));
  }
  return out;
}

CommandOutput run_optimize(const RunConfig& c, const CommandOptions& o) {
  const SweepRange& r = require_sweep(o, "optimize");
  if (r.parameter != SweepParameter::kTransmitPower) require_power(c, "optimize");
  CommandOptions opts = o;
  opts.paths = paths_or(o, {CapacityPath::kExact});
  const CapacityPath path = opts.paths.front();
  CommandOutput out{OutputTable({"parameter", "unit", "path", "optimum", "capacity_bits", "capacity_nats", "at_boundary", "status"})};
  add_run_metadata(out.table, c, {path});
  out.table.add_metadata("refine", o.refine ? "golden-section" : "grid");
  const std::string name(parameter_name(r.parameter));
  const std::string unit(parameter_unit(r.parameter));
  try {
    SweepSpec s = make_spec(c, opts, r);
    if (s.count == 0) throw ConfigError("optimize: the grid needs at least one point");
    const auto best = argmax_1d(s, path, o.refine);
    out.table.add_row({name, unit, std::string(path_name(path)), best.parameter, best.capacity_bits,
                       best.capacity_bits * std::numbers::ln2, std::string(best.at_boundary ? "yes" : "no"), "ok"});
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    out.failed = true;
    out.table.add_row({name, unit, std::string(path_name(path)), {}, {}, {}, {}, std::string("error: ") + e.what()});
  }
  return out;
}

CommandOutput run_validate(const RunConfig& c, const CommandOptions&) {
  CommandOutput out{OutputTable({"check", "sigma_theta_mrad", "theta_fov_mrad", "w_z_m", "value", "bound", "status"})};
  RunConfig base = c;
  if (!base.transmit_power_set) {
    base.noise.transmit_power = dbm_to_watts(kReferencePowerDbm);
    base.transmit_power_set = true;
  }
  add_run_metadata(out.table, base, {CapacityPath::kClosed, CapacityPath::kOracleQ, CapacityPath::kOracle});
  out.table.add_metadata("algebra", "max relative error of each closed-form summand against quadrature of its theta integral");
  out.table.add_metadata("closed_vs_oracle_q", "closed form against 2-D quadrature of the same Q-approximated integrand");
  out.table.add_metadata("normalization", "|outage mass + integral of the density - 1|");
  out.table.add_metadata("q_approx_gap", "closed form against 2-D quadrature with the exact Q function; informational");

  const std::array<double, 3> sds{2.0, 7.0, 10.0};
  const std::array<double, 3> fovs{10.0, 25.0, 40.0};
  const std::array<double, 3> widths{0.5, 2.0, 4.0};
  auto add = [&](const std::string& check, double sd, double fov, Cell w, Cell value, Cell bound, std::string status) {
    if (status != "pass" && status != "info") out.failed = true;
    out.table.add_row({check, sd, fov, std::move(w), std::move(value), std::move(bound), std::move(status)});
  };
  for (double sd : sds) {
    for (double fov : fovs) {
      RunConfig pt = base;
      pt.link.orientation_sd = sd * 1e-3;
      pt.link.fov_angle = fov * 1e-3;
      try {
        const double total = ChannelPdf(pt.link).total_probability(1e-10);
        const double err = std::abs(total - 1.0);
        add("normalization", sd, fov, pt.link.beam_width, err, 1e-3, err <= 1e-3 ? "pass" : "fail");
      } catch (const std::exception& e) {
        add("normalization", sd, fov, pt.link.beam_width, {}, 1e-3, std::string("error: ") + e.what());
      }
      for (double w : widths) {
        pt.link.beam_width = w;
        try {
          const auto k = derive_constants(pt.link);
          const auto kernel = build_kernel(k, pt.link, pt.noise);
          double worst = 0.0;
          for (const auto& comp : closed_form_components(kernel, k)) {
            const double twin = component_quadrature(kernel, k, comp.term, comp.i, comp.m);
            worst = std::max(worst, std::abs(comp.value - twin) / std::abs(twin));
          }
          add("algebra", sd, fov, w, worst, 1e-6, worst <= 1e-6 ? "pass" : "fail");

          const double closed = capacity_closed_form(kernel, k);
          const double oracle_q = capacity_highsnr_oracle(pt.link, pt.noise, true).nats;
          const double d7 = std::abs(closed - oracle_q) / std::abs(oracle_q);
          add("closed_vs_oracle_q", sd, fov, w, d7, 5e-3, d7 <= 5e-3 ? "pass" : "fail");

          const double oracle = capacity_highsnr_oracle(pt.link, pt.noise, false).nats;
          add("q_approx_gap", sd, fov, w, std::abs(closed - oracle) / std::abs(oracle), 3e-2, "info");
        } catch (const std::exception& e) {
          add("algebra", sd, fov, w, {}, {}, std::string("error: ") + e.what());
        }
      }
    }
  }
  return out;
}

CommandOutput run_pdf(const RunConfig& c, const CommandOptions& o) {
  if (o.pdf_points < 2) throw ConfigError("pdf: need at least 2 grid points");
  CommandOutput out{OutputTable({"h", "ln_h", "density", "probability", "status"})};
  add_run_metadata(out.table, c, {});
  const ChannelPdf pdf(c.link);
  const auto conv = outage_series_convergence(c.link);
  out.table.add_metadata("outage_mass", fmt(pdf.outage_mass()));
  out.table.add_metadata("outage_mass_next_order_rel_change", fmt(conv.relative_change));
  out.table.add_metadata("total_probability", fmt(pdf.total_probability(1e-10)));

  const double log_a0_hl = pdf.constants().log_a0_hl(c.link.attenuation);
  const double lo = std::log(pdf.support_floor());
  const double hi = log_a0_hl + pdf.conditional_breakpoints(0.0).back();
  const int n = o.pdf_points;
  const double step = (hi - lo) / (n - 1);
  out.table.add_row({0.0, {}, {}, pdf.outage_mass(), "ok"});
  for (int j = 0; j < n; ++j) {
    const double y = j + 1 == n ? hi : lo + j * step;
    const double h = std::exp(y);
    // Trapezoid weights in ln h, so the probability column sums to the continuous mass.
    const double weight = (j == 0 || j + 1 == n) ? 0.5 * step : step;
    try {
      const double f = pdf.density(h);
      out.table.add_row({h, y, f, f * h * weight, "ok"});
    } catch (const std::exception& e) {
      out.failed = true;
      out.table.add_row({h, y, {}, {}, std::string("error: ") + e.what()});
    }
  }
  return out;
}

}  // namespace uavfso::cli
