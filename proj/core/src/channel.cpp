#include "uavfso/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uavfso/error.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso {
namespace {

constexpr int kMaxSeriesOrder = 150;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("invalid link parameters: " + what);
}

double log_h_weight(int m, int order, double fov_ratio) {
  const double x = 0.5 * fov_ratio * fov_ratio;
  const double log_upper = specfun::log_upper_incomplete_gamma(m + 1.0, x);
  if (order == 0) return log_upper;  // limit M -> 0 of M Gamma(M) / Gamma(M + 1) = 1
  const double mm = static_cast<double>(m);
  const double big_m = static_cast<double>(order);
  return -mm * std::numbers::ln2 + (1.0 - 2.0 * mm) * std::log(big_m) + log_upper + std::lgamma(big_m + mm) -
         std::lgamma(big_m - mm + 1.0) - 2.0 * std::lgamma(mm + 1.0);
}

double outage_mass_unchecked(const LinkParameters& p) {
  const double g = p.fov_angle / p.orientation_sd;
  double mass = 0.0;
  for (int m = 0; m <= p.series_order; ++m) mass += 0.5 * std::exp(log_h_weight(m, p.series_order, g) + std::lgamma(m + 1.0));
  return mass;
}

}  // namespace

void validate(const LinkParameters& p) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  require(positive(p.wavelength), "wavelength must be > 0");
  require(positive(p.aperture_radius), "aperture radius r_a must be > 0");
  require(positive(p.beam_width), "beam width w_z must be > 0");
  require(positive(p.link_length), "link length Z must be > 0");
  require(positive(p.position_sd), "position sd sigma_p must be > 0");
  require(positive(p.orientation_sd), "orientation sd sigma_theta must be > 0");
  require(positive(p.fov_angle), "FOV angle theta_fov must be > 0");
  require(p.fov_angle < 0.5 * std::numbers::pi, "FOV angle theta_fov must be < pi/2");
  require(positive(p.attenuation) && p.attenuation <= 1.0, "attenuation h_l must lie in (0, 1]");
  require(std::isfinite(p.log_irradiance_variance) && p.log_irradiance_variance >= 0.0,
          "log-irradiance variance must be >= 0");
  require(p.series_order >= 0 && p.series_order <= kMaxSeriesOrder, "series order M must lie in [0, 150]");
}

DerivedChannelConstants derive_constants(const LinkParameters& p) {
  validate(p);
  DerivedChannelConstants c;
  c.nu = std::sqrt(std::numbers::pi) * p.aperture_radius / (std::numbers::sqrt2 * p.beam_width);
  const double erf_nu = specfun::erf(c.nu);
  c.a0 = erf_nu * erf_nu;
  const double log_w_eq_sq = 2.0 * std::log(p.beam_width) + 0.5 * std::log(std::numbers::pi) + std::log(erf_nu) -
                             std::numbers::ln2 - std::log(c.nu) + c.nu * c.nu;
  if (!(log_w_eq_sq < 700.0)) {
    throw DomainError("invalid link parameters: beam width w_z is degenerate relative to r_a (equivalent width overflows)");
  }
  c.w_eq_sq = std::exp(log_w_eq_sq);
  c.gamma_sq = c.w_eq_sq / (8.0 * p.position_sd * p.position_sd);
  const double s2 = p.log_irradiance_variance;
  c.log_c_a = std::log(c.gamma_sq) - c.gamma_sq * std::log(c.a0 * p.attenuation) + 2.0 * s2 * c.gamma_sq * (1.0 + c.gamma_sq);
  c.c_b = 2.0 * s2 * c.w_eq_sq * (1.0 + 2.0 * c.gamma_sq);
  c.c_c = 4.0 * s2 * c.w_eq_sq * c.w_eq_sq;
  c.fov_ratio = p.fov_angle / p.orientation_sd;
  c.h_weights.resize(static_cast<std::size_t>(p.series_order) + 1);
  for (int m = 0; m <= p.series_order; ++m) c.h_weights[m] = std::exp(log_h_weight(m, p.series_order, c.fov_ratio));
  return c;
}

double h_weight(int m, const LinkParameters& p) {
  validate(p);
  if (m < 0) throw DomainError("h_weight: index m must be >= 0");
  if (m > p.series_order) {
    throw DomainError("h_weight: index m=" + std::to_string(m) + " exceeds series order M=" + std::to_string(p.series_order));
  }
  return std::exp(log_h_weight(m, p.series_order, p.fov_angle / p.orientation_sd));
}

double outage_mass(const LinkParameters& p) {
  validate(p);
  const double mass = outage_mass_unchecked(p);
  if (mass > 1.0 + 1e-9) {
    throw DomainError("outage mass " + std::to_string(mass) + " exceeds 1 for M=" + std::to_string(p.series_order) +
                      ", G=" + std::to_string(p.fov_angle / p.orientation_sd));
  }
  return mass;
}

SeriesConvergence outage_series_convergence(const LinkParameters& p) {
  validate(p);
  LinkParameters next = p;
  next.series_order += 1;
  SeriesConvergence out;
  out.mass_at_order = outage_mass_unchecked(p);
  out.mass_at_next_order = outage_mass_unchecked(next);
  const double denom = std::max(std::abs(out.mass_at_next_order), 1e-300);
  out.relative_change = std::abs(out.mass_at_next_order - out.mass_at_order) / denom;
  return out;
}

ChannelPdf::ChannelPdf(const LinkParameters& p)
    : params_(p), constants_(derive_constants(p)), outage_mass_(uavfso::outage_mass(p)) {
  angle_cutoff_ = std::min(std::sqrt(2.0 * 745.0) * p.orientation_sd,
                           20.0 * std::max(p.orientation_sd, p.position_sd / p.link_length));
  log_a0_hl_ = std::log(constants_.a0 * p.attenuation);
  log_scale_ = constants_.log_c_a + constants_.gamma_sq * log_a0_hl_;
}

double ChannelPdf::outage_given_angle(double theta) const {
  const double u = theta * theta / (params_.orientation_sd * params_.orientation_sd);
  if (u == 0.0) return constants_.h_weights[0];
  const double log_u = std::log(u);
  double sum = 0.0;
  for (std::size_t m = 0; m < constants_.h_weights.size(); ++m) {
    const double h = constants_.h_weights[m];
    if (h == 0.0) continue;
    sum += std::exp(-0.5 * u + static_cast<double>(m) * log_u + std::log(h));
  }
  return sum;
}

double ChannelPdf::angle_weight(double theta) const {
  if (theta <= 0.0) return 0.0;
  const double s2 = params_.orientation_sd * params_.orientation_sd;
  return theta / s2 * std::exp(-0.5 * theta * theta / s2) * (1.0 - outage_given_angle(theta));
}

ChannelPdf::Shape ChannelPdf::conditional_shape(double theta) const {
  const double z2t2 = params_.link_length * params_.link_length * theta * theta;
  const double sp2 = params_.position_sd * params_.position_sd;
  Shape s;
  s.knee = -(6.0 * z2t2 + constants_.c_b) / constants_.w_eq_sq;
  s.spread = std::sqrt(32.0 * sp2 * z2t2 + constants_.c_c) / constants_.w_eq_sq;
  s.mode = s.knee + constants_.gamma_sq * s.spread * s.spread;
  return s;
}

double ChannelPdf::log_conditional_density(double y, double theta) const {
  const Shape s = conditional_shape(theta);
  const double z2t2 = params_.link_length * params_.link_length * theta * theta;
  const double base =
      log_scale_ + constants_.gamma_sq * y + z2t2 / (2.0 * params_.position_sd * params_.position_sd);
  if (s.spread == 0.0) return y < s.knee ? base : -INFINITY;
  return base + specfun::log_q_function((y - s.knee) / s.spread);
}

std::vector<double> ChannelPdf::conditional_breakpoints(double theta) const {
  const Shape s = conditional_shape(theta);
  const double lo = s.knee - 40.0 / constants_.gamma_sq - 6.0 * s.spread;
  const double hi = std::max(s.mode, s.knee) + 12.0 * s.spread + 1e-12;
  std::vector<double> pts{lo, s.knee - 3.0 * s.spread, s.knee, s.mode, s.mode + 3.0 * s.spread, hi};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::erase_if(pts, [&](double v) { return v < lo || v > hi; });
  return pts;
}

double ChannelPdf::support_floor() const {
  const double theta = std::min(9.0 * params_.orientation_sd, angle_cutoff_);
  return std::exp(log_a0_hl_ + conditional_breakpoints(theta).front());
}

double ChannelPdf::density(double h, double rel_tol) const {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("density: h must be a positive finite gain");
  const double y = std::log(h) - log_a0_hl_;
  auto f = [&](double theta) {
    const double w = angle_weight(theta);
    if (w == 0.0) return 0.0;
    const double ld = log_conditional_density(y, theta);
    return ld < -745.0 ? 0.0 : w * std::exp(ld);
  };
  std::vector<double> pts{0.0};
  const double s = params_.orientation_sd;
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) pts.push_back(k * s);
  // Angle at which the knee of f(y | t) crosses y: the integrand peaks nearby.
  const double lz2 = 6.0 * params_.link_length * params_.link_length;
  const double knee_arg = (-y * constants_.w_eq_sq - constants_.c_b) / lz2;
  if (knee_arg > 0.0) pts.push_back(std::sqrt(knee_arg));
  pts.push_back(angle_cutoff_);
  std::erase_if(pts, [&](double v) { return v > angle_cutoff_; });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const auto r = quad::integrate(f, std::span<const double>(pts), {.rel_tol = rel_tol, .abs_tol = 0.0, .max_subdivisions = 1000});
  if (!r.converged) {
    throw ConvergenceError("density: angle integral did not converge at h=" + std::to_string(h));
  }
  const double value = r.value / h;
  if (value < 0.0) throw DomainError("density: negative at h=" + std::to_string(h) + " (invalid (M, G) combination)");
  return value;
}

double ChannelPdf::total_probability(double rel_tol) const {
  const auto r = expectation([](double) { return 1.0; }, {.rel_tol = rel_tol}, {.rel_tol = rel_tol});
  quad::require_converged(r, "total_probability");
  return outage_mass_ + r.value;
}

}  // namespace uavfso
