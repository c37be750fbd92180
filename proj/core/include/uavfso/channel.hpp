#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "uavfso/quadrature.hpp"

namespace uavfso {

/// Physical inputs of a hovering UAV-to-UAV optical link, strict SI units.
/// Defaults are the reference operating point: Table I constants with
/// w_z = 2 m, sigma_theta = 5 mrad and theta_FOV = 25 mrad.
struct LinkParameters {
  double wavelength = 1550e-9;          ///< lambda [m]
  double aperture_radius = 0.05;        ///< r_a [m]
  double beam_width = 2.0;              ///< w_z at the receiver plane [m]
  double link_length = 200.0;           ///< Z [m]
  double attenuation = 0.1;             ///< h_l, in (0, 1]
  double log_irradiance_variance = 0.1; ///< sigma^2_{ln h_a}
  double position_sd = 0.25;            ///< sigma_p [m]
  double orientation_sd = 5e-3;         ///< sigma_theta [rad]
  double fov_angle = 25e-3;             ///< theta_FOV [rad]
  int series_order = 10;                ///< M, terms kept in the FOV weight series

  friend bool operator==(const LinkParameters&, const LinkParameters&) = default;
};

/// Throws DomainError naming the first violated invariant.
void validate(const LinkParameters& p);

struct DerivedChannelConstants {
  double nu = 0.0;          ///< sqrt(pi) r_a / (sqrt(2) w_z)
  double a0 = 0.0;          ///< erf(nu)^2, peak collected fraction
  double w_eq_sq = 0.0;     ///< equivalent beam width squared [m^2]
  double gamma_sq = 0.0;    ///< w_eq^2 / (8 sigma_p^2)
  double log_c_a = 0.0;     ///< ln C_a; C_a itself overflows for wide beams
  double c_b = 0.0;         ///< [m^2]
  double c_c = 0.0;         ///< [m^4]
  double fov_ratio = 0.0;   ///< G = theta_FOV / sigma_theta
  std::vector<double> h_weights;  ///< H(0..M)

  double c_a() const { return std::exp(log_c_a); }
  double log_a0_hl(double attenuation) const { return std::log(a0 * attenuation); }
};

DerivedChannelConstants derive_constants(const LinkParameters& p);

/// FOV weight H(m) for 0 <= m <= M.
double h_weight(int m, const LinkParameters& p);

/// Probability atom at h = 0: sum_m H(m) m! / 2. Throws DomainError when the
/// series exceeds 1 + 1e-9 (the (M, G) pair does not give a valid density).
double outage_mass(const LinkParameters& p);

struct SeriesConvergence {
  double mass_at_order = 0.0;       ///< outage mass with M terms
  double mass_at_next_order = 0.0;  ///< outage mass with M + 1 terms
  double relative_change = 0.0;
};

/// Sensitivity of the outage mass to one more series term.
SeriesConvergence outage_series_convergence(const LinkParameters& p);

/// Channel density f_h: a point mass at h = 0 plus a continuous part given
/// as a mixture over the pointing angle theta_xy.
///
/// The continuous part factors as
///   f(h) = int_0^inf w(t) f(h | t) dt,   w(t) = t/s^2 e^{-t^2/2s^2} (1 - P_out(t)),
/// where f(h | t) is the pointing/turbulence density at a fixed angle and
/// P_out(t) = e^{-t^2/2s^2} sum_m H(m) (t^2/s^2)^m. Expectations are evaluated
/// in that order, with the inner integral over y = ln(h / (A0 h_l)).
class ChannelPdf {
 public:
  explicit ChannelPdf(const LinkParameters& p);

  const LinkParameters& params() const { return params_; }
  const DerivedChannelConstants& constants() const { return constants_; }

  double outage_mass() const { return outage_mass_; }

  /// Conditional outage probability P_out(t).
  double outage_given_angle(double theta) const;

  /// Mixture weight w(t); integrates to 1 - outage_mass().
  double angle_weight(double theta) const;

  /// Upper limit of every theta_xy integral.
  double angle_cutoff() const { return angle_cutoff_; }

  /// Continuous density at h > 0. Throws DomainError for h <= 0 and
  /// ConvergenceError (naming h) if the angle integral fails.
  double density(double h, double rel_tol = 1e-8) const;

  /// ln f(y | t) for y = ln(h / (A0 h_l)), with all exponentials combined
  /// before evaluation.
  double log_conditional_density(double y, double theta) const;

  /// Location of f(y | t): the Q-function knee, its spread, and the mode.
  struct Shape {
    double knee;
    double spread;
    double mode;
  };
  Shape conditional_shape(double theta) const;

  /// Interval in y that carries all but ~e^-40 of f(y | t).
  std::vector<double> conditional_breakpoints(double theta) const;

  /// Smallest h with non-negligible continuous density.
  double support_floor() const;

  /// int g(ln h) f(h) dh over the continuous part (the atom is excluded).
  template <class G>
  quad::Result expectation(G&& g, const quad::Options& outer = {}, const quad::Options& inner = {}) const;

  /// outage_mass() + int f(h) dh.
  double total_probability(double rel_tol = 1e-10) const;

 private:
  LinkParameters params_;
  DerivedChannelConstants constants_;
  double outage_mass_ = 0.0;
  double angle_cutoff_ = 0.0;
  double log_scale_ = 0.0;  // ln C_a + gamma^2 ln(A0 h_l)
  double log_a0_hl_ = 0.0;
};

template <class G>
quad::Result ChannelPdf::expectation(G&& g, const quad::Options& outer, const quad::Options& inner) const {
  int evaluations = 0;
  bool inner_ok = true;
  auto over_y = [&](double theta) {
    const double w = angle_weight(theta);
    if (w == 0.0) return 0.0;
    const auto pts = conditional_breakpoints(theta);
    auto f = [&](double y) {
      const double ld = log_conditional_density(y, theta);
      if (ld < -745.0) return 0.0;
      return g(y + log_a0_hl_) * std::exp(ld);
    };
    const auto r = quad::integrate(f, std::span<const double>(pts), inner);
    evaluations += r.evaluations;
    inner_ok = inner_ok && r.converged;
    return w * r.value;
  };
  const double s = params_.orientation_sd;
  std::vector<double> pts{0.0};
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    if (k * s < angle_cutoff_) pts.push_back(k * s);
  }
  pts.push_back(angle_cutoff_);
  auto r = quad::integrate(over_y, std::span<const double>(pts), outer);
  r.evaluations += evaluations;
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace uavfso
