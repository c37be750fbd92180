#include "published_forms.hpp"

#include <cmath>
#include <numbers>

#include "reference_points.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso::testing::published {

HighSnrKernel kernel_with_full_turbulence_term(const DerivedChannelConstants& c, const LinkParameters& p,
                                               const NoiseModel& n) {
  HighSnrKernel k = build_kernel(c, p, n);
  // sqrt_shift() and j2() use c_c / 2; doubling the stored value makes them use C_c.
  k.c_c = 2.0 * c.c_c;
  const double cc = c.c_c;
  const double z2 = p.link_length * p.link_length;
  const double sp2 = p.position_sd * p.position_sd;
  const double st2 = p.orientation_sd * p.orientation_sd;
  const double w2 = c.w_eq_sq;
  for (auto& t : k.terms) {
    const double ap = t.a_prime;
    t.log_k2 = c.log_c_a + c.gamma_sq * k.log_a0_hl +
               0.5 * std::log(32.0 * std::numbers::pi * t.a * t.a * sp2 * z2 / (ap * st2 * st2 * w2 * w2)) +
               (cc - 16.0 * ap * sp2 * c.c_b) / (128.0 * ap * sp2 * sp2);
    t.k3 = (cc - 8.0 * ap * sp2 * c.c_b) / (4.0 * ap * sp2 * w2) + 2.0 * k.log_a0_hl + k.k1;
  }
  return k;
}

double i11_with_typeset_constant(const HighSnrKernel& k) {
  const double c = k.sqrt_shift();
  const double z2 = k.link_length * k.link_length;
  double sum = 0.0;
  for (const auto& t : k.terms) {
    const double z = t.k4 * c;
    sum += 1.722 * t.k2() * std::pow(t.k4, -1.75) * (1.0 - 3.0 * t.a_prime) * z2 / (t.a_prime * k.w_eq_sq) *
           std::exp(z) * std::pow(c, 0.75) * std::exp(-0.5 * z) * specfun::whittaker_w(-0.25, -1.25, z);
  }
  return sum;
}

double outage_summand_with_rate_k4(const HighSnrKernel& k, const DerivedChannelConstants& c, Term term, int i, int m) {
  const auto& t = k.terms.at(i);
  const bool slope = term == Term::kI21;
  const double factor = slope ? t.slope : t.k3;
  const int order = slope ? m + 1 : m;
  return factor * t.k2() * c.h_weights.at(m) * std::pow(k.orientation_sd, -2.0 * m) *
         std::exp(moments::log_whittaker_route(order, k.sqrt_shift(), t.k4));
}

double outage_summand_typeset_integrand(const HighSnrKernel& k, const DerivedChannelConstants& c, Term term, int i, int m) {
  const auto& t = k.terms.at(i);
  const bool slope = term == Term::kI21;
  const double factor = slope ? t.slope : t.k3;
  // sqrt(t^6 + c t^4) = t^2 sqrt(t^2 + c) for I21, sqrt(t^2 + c) for I22.
  const int power = slope ? 2 : 0;
  const double shift = k.sqrt_shift();
  const double sd = k.orientation_sd;
  // Written as a moment so the quadrature stays in range: (t/sd)^{2m+1} t^power = sd^{-(2m+1)} t^{2(m + power/2) + 1}.
  const int n = m + power / 2;
  return factor * t.k2() * c.h_weights.at(m) * std::pow(sd, -(2.0 * m + 1.0)) * boost_moment(n, shift, t.k4_prime);
}

}  // namespace uavfso::testing::published
