#pragma once

#include "uavfso/channel.hpp"

namespace uavfso {

inline constexpr double kElectronCharge = 1.602176634e-19;  // C

/// Receiver noise and transmit-side inputs. Background radiance follows the
/// photometric convention of the link budget tables: N_b in W/(cm^2 um sr),
/// optical bandwidth in um, lens area in cm^2.
struct NoiseModel {
  double responsivity = 0.6;           ///< R [A/W]
  double transmit_power = 1e-2;        ///< P_t [W]
  double pd_bandwidth = 1e9;           ///< B_e [Hz]
  double optical_bandwidth_um = 1e-2;  ///< B_o [um]
  double spectral_radiance = 1e-3;     ///< N_b [W / (cm^2 um sr)]
  double lens_area_cm2 = 0.0;          ///< A_a [cm^2], pi r_a^2

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// pi r_a^2 with r_a converted from m to cm.
double lens_area_cm2(double aperture_radius_m);

/// Builds a NoiseModel whose lens area matches link.aperture_radius.
NoiseModel make_noise_model(const LinkParameters& link, double responsivity, double transmit_power_w,
                            double pd_bandwidth_hz = 1e9, double optical_bandwidth_um = 1e-2,
                            double spectral_radiance = 1e-3);

/// Throws DomainError if a field is non-positive or the lens area disagrees
/// with the aperture radius by more than 1e-12 relative.
void validate(const NoiseModel& n, const LinkParameters& link);

/// P_b = (pi/4) B_o N_b A_a theta_FOV^2 [W].
double background_power(const NoiseModel& n, double fov_angle);

/// sigma_n^2 = 2 B_e R e P_b [A^2].
double noise_variance(const NoiseModel& n, double fov_angle);

/// R^2 P_t^2 / sigma_n^2, the SNR per unit squared channel gain.
double snr_per_unit_gain(const NoiseModel& n, double fov_angle);

/// 10^((dBm - 30) / 10).
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace uavfso
