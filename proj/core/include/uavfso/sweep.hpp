#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavfso/capacity.hpp"

namespace uavfso {

/// Tunable inputs, each swept in its display unit.
enum class SweepParameter {
  kBeamWidth,       ///< w_z [m]
  kFovAngle,        ///< theta_FOV [mrad]
  kTransmitPower,   ///< P_t [dBm]
  kOrientationSd,   ///< sigma_theta [mrad]
};

/// "w_z", "theta_fov", "P_t", "sigma_theta".
std::string_view parameter_name(SweepParameter p);
/// "m", "mrad", "dBm", "mrad".
std::string_view parameter_unit(SweepParameter p);
std::optional<SweepParameter> parse_parameter(std::string_view name);

struct OperatingPoint {
  LinkParameters link;
  NoiseModel noise;
};

/// Copy of base with one parameter set to value (display unit).
OperatingPoint with_parameter(const OperatingPoint& base, SweepParameter p, double value);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kBeamWidth;
  double lo = 0.2;
  double hi = 6.0;
  int count = 25;  ///< grid points; lo == hi gives a single point
  OperatingPoint base;
  std::vector<CapacityPath> paths{CapacityPath::kExact};
  CapacityOptions capacity;
  bool allow_out_of_range = false;  ///< skip the range check against the design envelope
  int threads = 0;                  ///< 0: hardware concurrency
};

/// Throws DomainError for lo > hi, count < 1, an empty path list, or a range
/// outside the design envelope (w_z 0.2-6 m, theta_FOV 1-40 mrad,
/// sigma_theta 1-12 mrad) unless allow_out_of_range is set.
void validate(const SweepSpec& s);

/// Evenly spaced grid, endpoints included.
std::vector<double> sweep_grid(const SweepSpec& s);

struct SweepRow {
  double value = 0.0;
  std::array<std::optional<double>, kAllPaths.size()> bits{};
  std::vector<std::string> warnings;
  std::string error;  ///< empty when the row evaluated

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::kBeamWidth;
  std::vector<CapacityPath> paths;
  std::vector<SweepRow> rows;  ///< ascending in value

  /// Index of the best row on path (smallest value on ties); nullopt if no row evaluated.
  std::optional<std::size_t> argmax(CapacityPath path) const;
};

/// One row per grid point, evaluated concurrently. A failing point is
/// recorded in its row and the sweep continues.
SweepResult grid_sweep(const SweepSpec& s);

struct Optimum {
  double parameter = 0.0;
  double capacity_bits = 0.0;
  bool at_boundary = false;  ///< the coarse maximum sits on the first or last grid point
  std::size_t coarse_index = 0;
};

/// Grid maximum of objective over [lo, hi], then, with refine, a golden-section
/// search between the neighbouring grid points. Never returns less than the
/// best grid value.
Optimum argmax_1d(const std::function<double(double)>& objective, double lo, double hi, int count, bool refine);

/// argmax_1d over s.parameter using capacity in bits on `path`.
Optimum argmax_1d(const SweepSpec& s, CapacityPath path, bool refine);

struct DesignPenalty {
  double design_width = 0.0;      ///< w_z optimal for the worst-case sigma_theta [m]
  double design_capacity = 0.0;   ///< capacity at design_width under the actual sigma_theta [bits]
  double optimal_width = 0.0;     ///< w_z optimal for the actual sigma_theta [m]
  double optimal_capacity = 0.0;  ///< [bits]
  double gap = 0.0;               ///< optimal_capacity - design_capacity >= 0 [bits]
};

/// Cost of choosing w_z for the worst-case orientation spread when the actual
/// spread is smaller. width_grid gives the w_z range and grid used by both
/// optimizations (its parameter must be the beam width).
DesignPenalty penalty_of_worst_case_design(double orientation_sd_worst, double orientation_sd_actual,
                                           const SweepSpec& width_grid, CapacityPath path = CapacityPath::kExact);

}  // namespace uavfso
