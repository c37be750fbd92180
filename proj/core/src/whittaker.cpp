#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "uavfso/error.hpp"
#include "uavfso/quadrature.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso::specfun {
namespace {

// W_{a,b}(z) = z^a e^{-z/2} * tail, with
//   tail = 1/Gamma(c) * int_0^inf e^{-t} t^{c-1} (1 + t/z)^p dt,
//   c = 1/2 + |b| - a,  p = |b| + a - 1/2.
// Each route returns ln|tail| and its sign.
struct Tail {
  double log_abs;
  double sign;
};

std::string describe(double a, double b, double z) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "(a=%.17g, b=%.17g, z=%.17g)", a, b, z);
  return buf;
}

// c = n integer >= 1: expand t^{n-1} in powers of (1 + t) and integrate each
// term as an incomplete gamma. Alternating signs make this lose digits once
// z grows past n, so it gives up when the terms cancel by more than 1e4.
std::optional<Tail> finite_sum_tail(int n, double p, double z) {
  if (p <= -1.0) return std::nullopt;
  // g_k = e^z z^{-(s_k)} Gamma(s_k, z) with s_k = k + p + 1, by upward recurrence
  //   g_{k+1} = (s_k g_k + 1) / z.
  double g = std::exp(log_scaled_upper_incomplete_gamma(p + 1.0, z) - (p + 1.0) * std::log(z));
  if (!std::isfinite(g)) return std::nullopt;
  double sum = 0.0;
  double abs_sum = 0.0;
  double binom = 1.0;  // C(n-1, k)
  for (int k = 0; k < n; ++k) {
    const double sign = ((n - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * binom * g;
    sum += term;
    abs_sum += std::abs(term);
    const double s = k + p + 1.0;
    g = (s * g + 1.0) / z;
    binom = binom * (n - 1 - k) / (k + 1);
  }
  if (!(sum > 0.0) || abs_sum > 1e4 * sum) return std::nullopt;
  // int e^{-t} t^{c-1} (1 + t/z)^p dt = z^c int e^{-zu} u^{c-1} (1 + u)^p du = z^c * sum.
  return Tail{std::log(sum) + n * std::log(z) - std::lgamma(static_cast<double>(n)), 1.0};
}

// sum_k C(p, k) (c)_k z^{-k}; exact when p is a non-negative integer.
std::optional<Tail> asymptotic_tail(double c, double p, double z) {
  double term = 1.0;
  double sum = 1.0;
  double prev_abs = 1.0;
  for (int k = 0; k < 400; ++k) {
    term *= (p - k) * (c + k) / ((k + 1) * z);
    if (term == 0.0) return Tail{std::log(std::abs(sum)), sum < 0 ? -1.0 : 1.0};
    const double abs_term = std::abs(term);
    if (abs_term > prev_abs) return std::nullopt;  // divergent before converging
    sum += term;
    if (abs_term < 1e-16 * std::abs(sum)) {
      if (sum == 0.0) return std::nullopt;
      return Tail{std::log(std::abs(sum)), sum < 0 ? -1.0 : 1.0};
    }
    prev_abs = abs_term;
  }
  return std::nullopt;
}

Tail quadrature_tail(double c, double p, double z, double a, double b) {
  const quad::Options opt{.rel_tol = 1e-13, .abs_tol = 0.0, .max_subdivisions = 2000};
  quad::Result r;
  const double scale = std::max(1.0, c + std::max(p, 0.0));
  const double log_gamma_c = std::lgamma(c);
  if (c >= 1.0) {
    auto f = [&](double t) {
      if (t <= 0.0) return c == 1.0 ? 1.0 : 0.0;
      const double lv = -t + (c - 1.0) * std::log(t) + p * std::log1p(t / z) - log_gamma_c;
      return std::exp(lv);
    };
    r = quad::integrate_to_infinity(f, 0.0, scale, opt);
  } else {
    // t = v^{1/c} removes the t^{c-1} endpoint singularity.
    const double inv_c = 1.0 / c;
    auto f = [&](double v) {
      if (v <= 0.0) return 0.0;
      const double t = std::pow(v, inv_c);
      return std::exp(-t + p * std::log1p(t / z) - log_gamma_c - std::log(c));
    };
    r = quad::integrate_to_infinity(f, 0.0, scale, opt);
  }
  if (!r.converged || !(r.value > 0.0)) {
    throw ConvergenceError("whittaker_w: integral representation failed to converge at " + describe(a, b, z));
  }
  return Tail{std::log(r.value), 1.0};
}

Tail whittaker_tail(double a, double b, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
    throw DomainError("whittaker_w: non-finite argument " + describe(a, b, z));
  }
  if (!(z > 0.0)) throw DomainError("whittaker_w: z must be > 0 " + describe(a, b, z));
  const double mu = std::abs(b);
  const double c = 0.5 + mu - a;
  const double p = mu + a - 0.5;

  // The asymptotic series only returns when its terms fell below 1e-16.
  if (auto t = asymptotic_tail(c, p, z)) return *t;
  const double n_real = std::round(c);
  if (std::abs(c - n_real) < 1e-12 && n_real >= 1.0 && n_real <= 64.0) {
    if (auto t = finite_sum_tail(static_cast<int>(n_real), p, z)) return *t;
  }
  if (c > 0.0) return quadrature_tail(c, p, z, a, b);
  throw DomainError("whittaker_w: 1/2 + |b| - a <= 0 outside the asymptotic regime " + describe(a, b, z));
}

}  // namespace

double log_whittaker_w(double a, double b, double z) {
  const Tail t = whittaker_tail(a, b, z);
  if (t.sign < 0.0) throw DomainError("log_whittaker_w: W is negative at " + describe(a, b, z));
  return a * std::log(z) - 0.5 * z + t.log_abs;
}

double whittaker_w(double a, double b, double z) {
  const Tail t = whittaker_tail(a, b, z);
  const double v = t.sign * std::exp(a * std::log(z) - 0.5 * z + t.log_abs);
  if (!std::isfinite(v)) throw ConvergenceError("whittaker_w: result not representable at " + describe(a, b, z));
  return v;
}

}  // namespace uavfso::specfun
