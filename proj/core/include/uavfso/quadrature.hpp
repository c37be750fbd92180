#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

// Globally adaptive Gauss-Kronrod (G10/K21) quadrature.
//
// Every nested integral in the library goes through this header, so the
// integrator is a template over the integrand type to keep the inner loops
// free of std::function dispatch.

namespace uavfso::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 400;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-Legendre 10-point nodes.
inline constexpr std::array<double, 11> kNodes = {
    0.000000000000000000000000000000000e+00, 1.488743389816312108848260011297200e-01,
    2.943928627014601981311266031038656e-01, 4.333953941292471907992659431657842e-01,
    5.627571346686046833390000992726941e-01, 6.794095682990244062343273651148736e-01,
    7.808177265864168970637175783450424e-01, 8.650633666889845107320966884234930e-01,
    9.301574913557082260012071800595083e-01, 9.739065285171717200779640120844521e-01,
    9.956571630258080807355272806890028e-01,
};
inline constexpr std::array<double, 11> kKronrodWeights = {
    1.494455540029169056649364683898212e-01, 1.477391049013384913748415159720680e-01,
    1.427759385770600807970942731387171e-01, 1.347092173114733259280540017717068e-01,
    1.234919762620658510779581098310742e-01, 1.093871588022976418992105903258050e-01,
    9.312545458369760553506546508336634e-02, 7.503967481091995276704314091619001e-02,
    5.475589657435199603138130024458018e-02, 3.255816230796472747881897245938976e-02,
    1.169463886737187427806439606219205e-02,
};
// Gauss weights for kNodes[1], kNodes[3], ..., kNodes[9].
inline constexpr std::array<double, 5> kGaussWeights = {
    2.955242247147528701738929946513383e-01, 2.692667193099963550912269215694694e-01,
    2.190863625159820439955349342281632e-01, 1.494513491505805931457763396576973e-01,
    6.667134430868813759356880989333179e-02,
};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment apply_rule(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[0];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 21> samples{};
  samples[0] = f_center;
  for (std::size_t j = 1; j < kNodes.size(); ++j) {
    const double dx = half * kNodes[j];
    const double f_lo = f(center - dx);
    const double f_hi = f(center + dx);
    samples[2 * j - 1] = f_lo;
    samples[2 * j] = f_hi;
    kronrod += kKronrodWeights[j] * (f_lo + f_hi);
    abs_sum += kKronrodWeights[j] * (std::abs(f_lo) + std::abs(f_hi));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f_lo + f_hi);
  }
  // QUADPACK error heuristic.
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[0] * std::abs(f_center - mean);
  for (std::size_t j = 1; j < kNodes.size(); ++j) {
    asc += kKronrodWeights[j] * (std::abs(samples[2 * j - 1] - mean) + std::abs(samples[2 * j] - mean));
  }
  const double scale = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * abs_sum, err);
  return {lo, hi, kronrod * half, err};
}

}  // namespace detail

/// Integrate f over the union of [points[k], points[k+1]]. Breakpoints let
/// the caller mark peaks or kinks the adaptive scheme should not have to find.
template <class F>
Result integrate(F&& f, std::span<const double> points, const Options& opt = {}) {
  Result out;
  if (points.size() < 2) return out;
  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (!(points[k + 1] > points[k])) continue;
    auto seg = detail::apply_rule(f, points[k], points[k + 1]);
    out.evaluations += 21;
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  auto done = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  int splits = 0;
  while (!heap.empty() && !done() && splits < opt.max_subdivisions) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // interval exhausted
    heap.pop();
    const auto left = detail::apply_rule(f, worst.lo, mid);
    const auto right = detail::apply_rule(f, mid, worst.hi);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error = total_err;
  out.converged = std::isfinite(total) && done();
  return out;
}

template <class F>
Result integrate(F&& f, double lo, double hi, const Options& opt = {}) {
  const std::array<double, 2> pts{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(pts), opt);
}

template <class F>
Result integrate(F&& f, std::initializer_list<double> points, const Options& opt = {}) {
  return integrate(std::forward<F>(f), std::span<const double>(points.begin(), points.size()), opt);
}

/// Integrate over [lo, inf) through t = lo + scale * s / (1 - s).
template <class F>
Result integrate_to_infinity(F&& f, double lo, double scale, const Options& opt = {}) {
  auto mapped = [&](double s) {
    const double one_minus = 1.0 - s;
    const double t = lo + scale * s / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double v = f(t);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Throws ConvergenceError naming `what` when r did not converge.
void require_converged(const Result& r, std::string_view what);

}  // namespace uavfso::quad
