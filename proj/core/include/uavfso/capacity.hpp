#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavfso/channel.hpp"
#include "uavfso/closed_form.hpp"
#include "uavfso/noise.hpp"

namespace uavfso {

/// Ways of computing the ergodic capacity.
enum class CapacityPath {
  kExact,     ///< E[ln(1 + snr h^2)] by quadrature against the channel density
  kOracle,    ///< high-SNR form E[ln(snr h^2)] by quadrature, exact Q function
  kOracleQ,   ///< the same with the exponential Q approximation
  kClosed,    ///< I11 + I12 - I21 - I22 in closed form
  kLargeFov,  ///< I11 + I12
};

inline constexpr std::array<CapacityPath, 5> kAllPaths = {CapacityPath::kExact, CapacityPath::kOracle, CapacityPath::kOracleQ,
                                                          CapacityPath::kClosed, CapacityPath::kLargeFov};

/// "exact", "oracle", "oracle_q", "closed", "largefov".
std::string_view path_name(CapacityPath p);
std::optional<CapacityPath> parse_path(std::string_view name);

constexpr double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

struct CapacityOptions {
  double rel_tol = 1e-6;              ///< quadrature paths
  double high_snr_threshold = 10.0;   ///< warn when snr (A0 h_l)^2 is not above this
  bool verify_closed_form = false;    ///< check each closed-form summand against its quadrature twin
  double verify_rel_tol = 1e-6;
};

/// snr (A0 h_l)^2: the SNR at the peak unfaded gain.
double snr_at_peak_gain(const LinkParameters& p, const NoiseModel& n);

/// E[ln(1 + snr h^2)] [nats]. The atom at h = 0 contributes nothing.
double capacity_exact(const LinkParameters& p, const NoiseModel& n, double rel_tol = 1e-6);

struct OracleResult {
  double nats = 0.0;
  std::vector<std::string> warnings;
};

/// E[ln(snr h^2)] over the continuous part [nats]. With use_q_approx the
/// Q function inside the density is replaced by its exponential sum, which
/// gives the integrand the closed form is derived from.
OracleResult capacity_highsnr_oracle(const LinkParameters& p, const NoiseModel& n, bool use_q_approx,
                                     const CapacityOptions& opt = {});

struct CapacityReport {
  std::array<std::optional<double>, kAllPaths.size()> nats{};
  std::optional<ClosedFormTerms> i_terms;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> warnings;

  bool has(CapacityPath p) const { return nats[static_cast<std::size_t>(p)].has_value(); }
  /// Throws std::bad_optional_access if the path was not evaluated.
  double value_nats(CapacityPath p) const { return nats[static_cast<std::size_t>(p)].value(); }
  double value_bits(CapacityPath p) const { return nats_to_bits(value_nats(p)); }
  /// |x - ref| / |ref|.
  double relative_delta(CapacityPath x, CapacityPath ref) const;
};

CapacityReport evaluate_capacity(const LinkParameters& p, const NoiseModel& n, std::span<const CapacityPath> paths,
                                 const CapacityOptions& opt = {});

}  // namespace uavfso
