#include "uavfso/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uavfso/error.hpp"

namespace uavfso {

double lens_area_cm2(double aperture_radius_m) {
  const double r_cm = aperture_radius_m * 100.0;
  return std::numbers::pi * r_cm * r_cm;
}

NoiseModel make_noise_model(const LinkParameters& link, double responsivity, double transmit_power_w,
                            double pd_bandwidth_hz, double optical_bandwidth_um, double spectral_radiance) {
  NoiseModel n{responsivity, transmit_power_w, pd_bandwidth_hz, optical_bandwidth_um, spectral_radiance,
               lens_area_cm2(link.aperture_radius)};
  validate(n, link);
  return n;
}

void validate(const NoiseModel& n, const LinkParameters& link) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid noise model: ") + what);
  };
  require(positive(n.responsivity), "responsivity R must be > 0");
  require(positive(n.transmit_power), "transmit power P_t must be > 0");
  require(positive(n.pd_bandwidth), "photodetector bandwidth B_e must be > 0");
  require(positive(n.optical_bandwidth_um), "optical bandwidth B_o must be > 0");
  require(positive(n.spectral_radiance), "spectral radiance N_b must be > 0");
  require(positive(n.lens_area_cm2), "lens area A_a must be > 0");
  const double expected = lens_area_cm2(link.aperture_radius);
  require(std::abs(n.lens_area_cm2 - expected) <= 1e-12 * expected, "lens area A_a inconsistent with aperture radius r_a");
}

double background_power(const NoiseModel& n, double fov_angle) {
  if (!(fov_angle >= 0.0)) throw DomainError("background_power: FOV angle must be >= 0");
  return 0.25 * std::numbers::pi * n.optical_bandwidth_um * n.spectral_radiance * n.lens_area_cm2 * fov_angle * fov_angle;
}

double noise_variance(const NoiseModel& n, double fov_angle) {
  return 2.0 * n.pd_bandwidth * n.responsivity * kElectronCharge * background_power(n, fov_angle);
}

double snr_per_unit_gain(const NoiseModel& n, double fov_angle) {
  const double var = noise_variance(n, fov_angle);
  if (!(var > 0.0)) throw DomainError("snr_per_unit_gain: noise variance must be > 0");
  const double rp = n.responsivity * n.transmit_power;
  return rp * rp / var;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace uavfso
