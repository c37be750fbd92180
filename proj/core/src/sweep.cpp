#include "uavfso/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "uavfso/error.hpp"

namespace uavfso {
namespace {

struct Envelope {
  double lo;
  double hi;
};

std::optional<Envelope> envelope(SweepParameter p) {
  switch (p) {
    case SweepParameter::kBeamWidth: return Envelope{0.2, 6.0};
    case SweepParameter::kFovAngle: return Envelope{1.0, 40.0};
    case SweepParameter::kOrientationSd: return Envelope{1.0, 12.0};
    case SweepParameter::kTransmitPower: return std::nullopt;
  }
  return std::nullopt;
}

double objective_bits(const OperatingPoint& base, SweepParameter p, double value, CapacityPath path,
                      const CapacityOptions& opt) {
  const auto point = with_parameter(base, p, value);
  const std::array<CapacityPath, 1> paths{path};
  return evaluate_capacity(point.link, point.noise, paths, opt).value_bits(path);
}

}  // namespace

std::string_view parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kBeamWidth: return "w_z";
    case SweepParameter::kFovAngle: return "theta_fov";
    case SweepParameter::kTransmitPower: return "P_t";
    case SweepParameter::kOrientationSd: return "sigma_theta";
  }
  return "?";
}

std::string_view parameter_unit(SweepParameter p) {
  switch (p) {
    case SweepParameter::kBeamWidth: return "m";
    case SweepParameter::kFovAngle: return "mrad";
    case SweepParameter::kTransmitPower: return "dBm";
    case SweepParameter::kOrientationSd: return "mrad";
  }
  return "?";
}

std::optional<SweepParameter> parse_parameter(std::string_view name) {
  for (auto p : {SweepParameter::kBeamWidth, SweepParameter::kFovAngle, SweepParameter::kTransmitPower,
                 SweepParameter::kOrientationSd}) {
    if (parameter_name(p) == name) return p;
  }
  return std::nullopt;
}

OperatingPoint with_parameter(const OperatingPoint& base, SweepParameter p, double value) {
  OperatingPoint out = base;
  switch (p) {
    case SweepParameter::kBeamWidth: out.link.beam_width = value; break;
    case SweepParameter::kFovAngle: out.link.fov_angle = value * 1e-3; break;
    case SweepParameter::kTransmitPower: out.noise.transmit_power = dbm_to_watts(value); break;
    case SweepParameter::kOrientationSd: out.link.orientation_sd = value * 1e-3; break;
  }
  return out;
}

void validate(const SweepSpec& s) {
  const std::string name(parameter_name(s.parameter));
  if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) throw DomainError("sweep " + name + ": range must be finite");
  if (s.lo > s.hi) throw DomainError("sweep " + name + ": lo must not exceed hi");
  if (s.count < 1) throw DomainError("sweep " + name + ": point count must be >= 1");
  if (s.lo < s.hi && s.count < 2) throw DomainError("sweep " + name + ": a non-degenerate range needs >= 2 points");
  if (s.paths.empty()) throw DomainError("sweep: no capacity path selected");
  if (!s.allow_out_of_range) {
    if (auto e = envelope(s.parameter); e && (s.lo < e->lo || s.hi > e->hi)) {
      throw DomainError("sweep " + name + ": range [" + std::to_string(s.lo) + ", " + std::to_string(s.hi) +
                        "] leaves the design envelope [" + std::to_string(e->lo) + ", " + std::to_string(e->hi) + "] " +
                        std::string(parameter_unit(s.parameter)));
    }
  }
}

std::vector<double> sweep_grid(const SweepSpec& s) {
  validate(s);
  if (s.lo == s.hi) return {s.lo};
  std::vector<double> g(static_cast<std::size_t>(s.count));
  const double step = (s.hi - s.lo) / (s.count - 1);
  for (int j = 0; j < s.count; ++j) g[j] = s.lo + j * step;
  g.back() = s.hi;
  return g;
}

std::optional<std::size_t> SweepResult::argmax(CapacityPath path) const {
  std::optional<std::size_t> best;
  const auto idx = static_cast<std::size_t>(path);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto& v = rows[j].bits[idx];
    if (!rows[j].ok() || !v) continue;
    if (!best || *v > *rows[*best].bits[idx]) best = j;
  }
  return best;
}

SweepResult grid_sweep(const SweepSpec& s) {
  const auto grid = sweep_grid(s);
  SweepResult out;
  out.parameter = s.parameter;
  out.paths = s.paths;
  out.rows.resize(grid.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < grid.size(); j = next++) {
      SweepRow& row = out.rows[j];
      row.value = grid[j];
      try {
        const auto point = with_parameter(s.base, s.parameter, grid[j]);
        const auto report = evaluate_capacity(point.link, point.noise, s.paths, s.capacity);
        for (CapacityPath p : s.paths) row.bits[static_cast<std::size_t>(p)] = report.value_bits(p);
        row.warnings = report.warnings;
      } catch (const std::exception& e) {
        row.bits = {};
        row.error = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min<std::size_t>(grid.size(), s.threads > 0 ? static_cast<std::size_t>(s.threads) : hw);
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  return out;
}

Optimum argmax_1d(const std::function<double(double)>& objective, double lo, double hi, int count, bool refine) {
  if (!(lo <= hi) || count < 1) throw DomainError("argmax_1d: need lo <= hi and count >= 1");
  std::vector<double> xs;
  if (lo == hi || count == 1) {
    xs = {lo};
  } else {
    const double step = (hi - lo) / (count - 1);
    for (int j = 0; j < count; ++j) xs.push_back(j + 1 == count ? hi : lo + j * step);
  }
  std::vector<double> ys(xs.size());
  std::size_t best = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    ys[j] = objective(xs[j]);
    if (ys[j] > ys[best]) best = j;
  }
  Optimum out{xs[best], ys[best], xs.size() > 1 && (best == 0 || best + 1 == xs.size()), best};
  if (!refine || xs.size() < 3) return out;

  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  const double tol = 1e-6 * (hi - lo);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > tol) {
    if (f1 >= f2) {  // ties keep the left bracket
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = objective(x2);
    }
  }
  const double x = f1 >= f2 ? x1 : x2;
  const double f = std::max(f1, f2);
  if (f > out.capacity_bits) {
    out.parameter = x;
    out.capacity_bits = f;
  }
  return out;
}

Optimum argmax_1d(const SweepSpec& s, CapacityPath path, bool refine) {
  validate(s);
  auto objective = [&](double v) { return objective_bits(s.base, s.parameter, v, path, s.capacity); };
  return argmax_1d(objective, s.lo, s.hi, s.lo == s.hi ? 1 : s.count, refine);
}

DesignPenalty penalty_of_worst_case_design(double orientation_sd_worst, double orientation_sd_actual,
                                           const SweepSpec& width_grid, CapacityPath path) {
  if (width_grid.parameter != SweepParameter::kBeamWidth) {
    throw DomainError("penalty_of_worst_case_design: the grid must sweep the beam width");
  }
  auto at_sd = [&](double sd) {
    SweepSpec s = width_grid;
    s.base.link.orientation_sd = sd;
    return s;
  };
  const SweepSpec worst = at_sd(orientation_sd_worst);
  const SweepSpec actual = at_sd(orientation_sd_actual);
  DesignPenalty out;
  const Optimum best = argmax_1d(actual, path, true);
  out.optimal_width = best.parameter;
  out.optimal_capacity = best.capacity_bits;
  if (orientation_sd_worst == orientation_sd_actual) {
    out.design_width = best.parameter;
    out.design_capacity = best.capacity_bits;
    return out;
  }
  out.design_width = argmax_1d(worst, path, true).parameter;
  out.design_capacity = objective_bits(actual.base, SweepParameter::kBeamWidth, out.design_width, path, actual.capacity);
  // The refined optimum is local; a better design point is a better optimum.
  if (out.design_capacity > out.optimal_capacity) {
    out.optimal_width = out.design_width;
    out.optimal_capacity = out.design_capacity;
  }
  out.gap = out.optimal_capacity - out.design_capacity;
  return out;
}

}  // namespace uavfso
