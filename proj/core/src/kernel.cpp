#include "uavfso/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uavfso/error.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso {

double HighSnrKernel::j1(double theta) const {
  return (6.0 * link_length * link_length * theta * theta + c_b) / w_eq_sq - log_a0_hl;
}

double HighSnrKernel::j2(int i, double theta) const {
  const double sp2z2 = position_sd * position_sd * link_length * link_length;
  return (16.0 * sp2z2 * theta * theta + 0.5 * c_c) / (terms.at(i).a_prime * w_eq_sq * w_eq_sq);
}

double HighSnrKernel::sqrt_shift() const {
  return 0.5 * c_c / (16.0 * position_sd * position_sd * link_length * link_length);
}

HighSnrKernel build_kernel(const DerivedChannelConstants& c, const LinkParameters& p, const NoiseModel& n) {
  validate(p);
  validate(n, p);
  HighSnrKernel k;
  const double var = noise_variance(n, p.fov_angle);
  if (!(var > 0.0)) throw DomainError("build_kernel: noise variance must be > 0");
  const double rp = n.responsivity * n.transmit_power;
  k.k1 = std::log(rp * rp / var);

  k.link_length = p.link_length;
  k.position_sd = p.position_sd;
  k.orientation_sd = p.orientation_sd;
  k.w_eq_sq = c.w_eq_sq;
  k.gamma_sq = c.gamma_sq;
  k.c_b = c.c_b;
  k.c_c = c.c_c;
  k.log_a0_hl = std::log(c.a0 * p.attenuation);
  k.log_c_a = c.log_c_a;

  const double z2 = p.link_length * p.link_length;
  const double sp2 = p.position_sd * p.position_sd;
  const double st2 = p.orientation_sd * p.orientation_sd;
  const double w2 = c.w_eq_sq;
  const double cc = 0.5 * c.c_c;
  for (std::size_t i = 0; i < k.terms.size(); ++i) {
    KernelTerm& t = k.terms[i];
    t.a = specfun::kQApprox.a[i];
    t.a_prime = specfun::kQApprox.a_prime[i];
    const double ap = t.a_prime;
    t.log_k2 = c.log_c_a + c.gamma_sq * k.log_a0_hl +
               0.5 * std::log(32.0 * std::numbers::pi * t.a * t.a * sp2 * z2 / (ap * st2 * st2 * w2 * w2)) +
               (cc - 16.0 * ap * sp2 * c.c_b) / (128.0 * ap * sp2 * sp2);
    t.k3 = (cc - 8.0 * ap * sp2 * c.c_b) / (4.0 * ap * sp2 * w2) + 2.0 * k.log_a0_hl + k.k1;
    // (6a' - 1)/(8a') - 1/2 = (2a' - 1)/(8a'): written in the cancellation-free form.
    t.k4 = (2.0 * ap - 1.0) * z2 / (8.0 * ap * sp2) + 1.0 / (2.0 * st2);
    t.k4_prime = t.k4 + 1.0 / (2.0 * st2);
    t.slope = (4.0 - 12.0 * ap) * z2 / (ap * w2);
    if (!(t.k4 > 0.0)) {
      throw DomainError("build_kernel: K4_" + std::to_string(i + 1) + " <= 0, theta integrals diverge");
    }
  }
  return k;
}

}  // namespace uavfso
