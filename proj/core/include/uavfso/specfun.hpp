#pragma once

#include <array>

// Scalar special functions used by the channel density and the closed-form
// capacity. All functions are pure; precondition violations throw
// uavfso::DomainError and failed evaluations throw uavfso::ConvergenceError.

namespace uavfso::specfun {

/// Weights and exponents of the three-term exponential fit
/// Q(x) ~ sum_i a[i] * exp(-a_prime[i] * x^2).
struct QApproxCoefficients {
  std::array<double, 3> a;
  std::array<double, 3> a_prime;
};

inline constexpr QApproxCoefficients kQApprox{
    {5.0 / 24.0, 4.0 / 24.0, 1.0 / 24.0},
    {2.0, 11.0 / 20.0, 1.0 / 2.0},
};

double erf(double x);
double erfc(double x);

/// Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

/// ln Q(x), accurate deep into the upper tail where Q underflows.
double log_q_function(double x);

/// Three-term exponential approximation of Q for x >= 0.
double q_approx(double x);

/// Upper incomplete gamma Gamma(s, x) for s > 0, x >= 0.
double upper_incomplete_gamma(double s, double x);

/// ln Gamma(s, x); finite wherever Gamma(s, x) would underflow.
double log_upper_incomplete_gamma(double s, double x);

/// ln(e^x Gamma(s, x)), without the cancellation of adding x back for large x.
double log_scaled_upper_incomplete_gamma(double s, double x);

/// Whittaker function W_{a,b}(z) for real a, b and z > 0.
///
/// W is even in b, so only |b| matters. Evaluation picks, in order:
///  - a finite incomplete-gamma sum when 1/2 + |b| - a is a positive integer
///    and the sum is well conditioned,
///  - the large-z asymptotic series when it has converged,
///  - adaptive quadrature of the integral representation
///      W = z^a e^{-z/2} / Gamma(c) * int_0^inf e^{-t} t^{c-1} (1 + t/z)^{|b|+a-1/2} dt,
///    with c = 1/2 + |b| - a > 0.
/// Parameter sets with c <= 0 that are not covered by the first two routes
/// are rejected.
double whittaker_w(double a, double b, double z);

/// ln W_{a,b}(z) for the cases where W is positive (always true when
/// 1/2 + |b| - a > 0). Avoids overflow of the e^{-z/2} z^a prefactor.
double log_whittaker_w(double a, double b, double z);

}  // namespace uavfso::specfun
