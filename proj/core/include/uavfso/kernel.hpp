#pragma once

#include <array>
#include <cmath>

#include "uavfso/channel.hpp"
#include "uavfso/noise.hpp"

namespace uavfso {

/// Constants of one term of the three-term Q approximation after the ln h
/// integral has been carried out.
struct KernelTerm {
  double a = 0.0;          ///< weight a_i
  double a_prime = 0.0;    ///< exponent a'_i
  double log_k2 = 0.0;     ///< ln K2_i (K2_i > 0 but may overflow)
  double k3 = 0.0;         ///< K3_i
  double k4 = 0.0;         ///< K4_i, Gaussian rate of the unconditioned integrals
  double k4_prime = 0.0;   ///< K'4_i = K4_i + 1/(2 sigma_theta^2), rate of the outage integrals
  double slope = 0.0;      ///< (4 - 12 a'_i) Z^2 / (a'_i w_eq^2), coefficient of theta^2

  double k2() const { return std::exp(log_k2); }
};

/// Constants of the high-SNR capacity kernel.
///
/// The turbulence variance enters J2 as C_c / 2: with Q(x) replaced by
/// a e^{-a' x^2}, x = w_eq^2 (ln h + J1) / sqrt(32 sigma_p^2 Z^2 t^2 + C_c),
/// the Gaussian in ln h has variance (32 sigma_p^2 Z^2 t^2 + C_c) / (2 a' w_eq^4).
struct HighSnrKernel {
  double k1 = 0.0;  ///< ln(R^2 P_t^2 / sigma_n^2)
  std::array<KernelTerm, 3> terms{};

  double link_length = 0.0;
  double position_sd = 0.0;
  double orientation_sd = 0.0;
  double w_eq_sq = 0.0;
  double gamma_sq = 0.0;
  double c_b = 0.0;
  double c_c = 0.0;
  double log_a0_hl = 0.0;
  double log_c_a = 0.0;

  /// J1(t) = (6 Z^2 t^2 + C_b) / w_eq^2 - ln(A0 h_l).
  double j1(double theta) const;
  /// J2_i(t) = (16 sigma_p^2 Z^2 t^2 + C_c / 2) / (a'_i w_eq^4), i in {0, 1, 2}.
  double j2(int i, double theta) const;
  /// Offset c in sqrt(t^2 + c) after factoring the theta dependence out of sqrt(J2).
  double sqrt_shift() const;
};

/// Throws DomainError if the noise variance is zero or some K4_i <= 0.
HighSnrKernel build_kernel(const DerivedChannelConstants& c, const LinkParameters& p, const NoiseModel& n);

}  // namespace uavfso
