#include "uavfso/closed_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "uavfso/error.hpp"
#include "uavfso/quadrature.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso {
namespace {

// ln int_0^inf exp(log_f(t)) dt where log_f peaks near `peak` and decays like
// e^{-rate t^2}; evaluated relative to the peak value to stay in range.
template <class LogF>
double log_integrate(LogF&& log_f, double peak, double rate, double rel_tol, const std::string& what) {
  const double width = 1.0 / std::sqrt(rate);
  const double log_peak = log_f(peak);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(log_f(t) - log_peak);
  };
  const auto r = quad::integrate(f, {0.0, 0.5 * peak, peak, peak + 2.0 * width, peak + 8.0 * width, peak + 40.0 * width},
                                 {.rel_tol = rel_tol, .abs_tol = 0.0, .max_subdivisions = 1000});
  quad::require_converged(r, what);
  if (!(r.value > 0.0)) throw ConvergenceError(what + ": integral is not positive");
  return std::log(r.value) + log_peak;
}

}  // namespace

namespace moments {

double log_whittaker_route(int n, double shift, double rate) {
  if (n < 0) throw DomainError("moment order n must be >= 0");
  if (!(rate > 0.0)) throw DomainError("moment rate k must be > 0");
  if (!(shift >= 0.0)) throw DomainError("moment shift c must be >= 0");
  const double nn = static_cast<double>(n);
  if (shift == 0.0) return std::lgamma(nn + 1.5) - std::numbers::ln2 - (nn + 1.5) * std::log(rate);
  const double z = rate * shift;
  return std::lgamma(nn + 1.0) - std::numbers::ln2 - (2.0 * nn + 5.0) / 4.0 * std::log(rate) +
         (2.0 * nn + 1.0) / 4.0 * std::log(shift) + 0.5 * z +
         specfun::log_whittaker_w(-(2.0 * nn - 1.0) / 4.0, -(2.0 * nn + 3.0) / 4.0, z);
}

std::vector<double> log_whittaker_family(int n_max, double shift, double rate) {
  if (n_max < 0) throw DomainError("moment order n must be >= 0");
  if (!(rate > 0.0)) throw DomainError("moment rate k must be > 0");
  if (!(shift >= 0.0)) throw DomainError("moment shift c must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  const double z = rate * shift;
  if (n_max < 2 || !(z > 1e-150)) {
    for (int n = 0; n <= n_max; ++n) out[n] = log_whittaker_route(n, shift, rate);
    return out;
  }
  // T(n) = n!/2 k^{-n-3/2} z^{1/2} F_n with F_n = 1/n! int_0^inf e^{-v} v^n (1 + v/z)^{1/2} dv.
  auto log_scale = [&](int n) {
    return std::lgamma(n + 1.0) - std::numbers::ln2 - (n + 1.5) * std::log(rate) + 0.5 * std::log(z);
  };
  // Boundary problem on [0, nb], nb ~ z, then forward recurrence above nb,
  // which is stable once n exceeds z. Anchoring at n_max >> z instead would
  // amplify the anchor's rounding by the system's ~1e6 condition number.
  const int nb = std::min(n_max, std::max(1, static_cast<int>(std::ceil(z))));
  const double log_f0 = log_incomplete_gamma_route(shift, rate) - log_scale(0);
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1);  // F_n / F_0
  f[0] = 1.0;
  f[nb] = std::exp(log_whittaker_route(nb, shift, rate) - log_scale(nb) - log_f0);
  if (nb >= 2) {
    const int dim = nb - 1;  // unknowns F_1..F_{nb-1}, rows n = 0..nb-2
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    for (int n = 0; n < dim; ++n) {
      if (n == 0) {
        rhs(n) -= z;
      } else {
        a(n, n - 1) = z;
      }
      a(n, n) = n + 2.5 - z;
      if (n + 2 == nb) {
        rhs(n) += (n + 2.0) * f[nb];
      } else {
        a(n, n + 1) = -(n + 2.0);
      }
    }
    const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
    for (int n = 1; n < nb; ++n) f[n] = x(n - 1);
  }
  for (int n = nb - 1; n + 2 <= n_max; ++n) f[n + 2] = (z * f[n] + (n + 2.5 - z) * f[n + 1]) / (n + 2.0);
  for (int n = 0; n <= n_max; ++n) {
    if (!(f[n] > 0.0) || !std::isfinite(f[n])) {
      throw ConvergenceError("log_whittaker_family: recurrence lost positivity at n=" + std::to_string(n));
    }
    out[n] = std::log(f[n]) + log_f0 + log_scale(n);
  }
  return out;
}

double log_incomplete_gamma_route(double shift, double rate) {
  if (!(rate > 0.0)) throw DomainError("moment rate k must be > 0");
  if (!(shift >= 0.0)) throw DomainError("moment shift c must be >= 0");
  const double z = rate * shift;
  return -std::numbers::ln2 - 1.5 * std::log(rate) + specfun::log_scaled_upper_incomplete_gamma(1.5, z);
}

double quadrature(int n, double shift, double rate, double rel_tol) {
  if (n < 0 || !(rate > 0.0) || !(shift >= 0.0)) throw DomainError("moment quadrature: invalid (n, c, k)");
  const double nn = static_cast<double>(n);
  auto log_f = [&](double t) { return (2.0 * nn + 1.0) * std::log(t) + 0.5 * std::log(t * t + shift) - rate * t * t; };
  return std::exp(log_integrate(log_f, std::sqrt((nn + 1.0) / rate), rate, rel_tol, "moment quadrature"));
}

}  // namespace moments

std::string to_string(Term t) {
  switch (t) {
    case Term::kI11: return "I11";
    case Term::kI12: return "I12";
    case Term::kI21: return "I21";
    case Term::kI22: return "I22";
  }
  return "?";
}

namespace {

struct Summand {
  double log_abs_coef;  // ln |prefactor|, everything except the theta moment
  double sign;
  int order;            // moment order n
  double rate;
};

// Prefactor of summand (term, i, m):
//   I11: K2 s T(1; K4)            I12: K2 K3 T(0; K4)
//   I21: K2 s H(m) sd^{-2m} T(m+1; K4')   I22: K2 K3 H(m) sd^{-2m} T(m; K4')
// with s the theta^2 slope of the kernel. Returns false if H(m) = 0.
bool summand(const HighSnrKernel& k, const DerivedChannelConstants& c, Term term, int i, int m, Summand& out) {
  const KernelTerm& kt = k.terms.at(i);
  const bool with_slope = term == Term::kI11 || term == Term::kI21;
  const double factor = with_slope ? kt.slope : kt.k3;
  out.sign = factor < 0.0 ? -1.0 : 1.0;
  out.log_abs_coef = kt.log_k2 + std::log(std::abs(factor));
  if (term == Term::kI11 || term == Term::kI12) {
    out.order = with_slope ? 1 : 0;
    out.rate = kt.k4;
    return factor != 0.0;
  }
  if (m < 0 || static_cast<std::size_t>(m) >= c.h_weights.size()) {
    throw DomainError("closed form: outage index m=" + std::to_string(m) + " outside the FOV series");
  }
  const double h = c.h_weights[m];
  if (h == 0.0 || factor == 0.0) return false;
  out.log_abs_coef += std::log(h) - 2.0 * m * std::log(k.orientation_sd);
  out.order = with_slope ? m + 1 : m;
  out.rate = kt.k4_prime;
  return true;
}

// ln T for every summand of one evaluation. The outage terms need T(0..M+1)
// at the shifted rate of each i, computed once per rate as a family.
class MomentTable {
 public:
  MomentTable(const HighSnrKernel& k, const DerivedChannelConstants& c, bool with_outage = true) : shift_(k.sqrt_shift()) {
    if (!with_outage) return;
    const int n_max = static_cast<int>(c.h_weights.size());
    for (std::size_t i = 0; i < k.terms.size(); ++i) {
      outage_[i] = moments::log_whittaker_family(n_max, shift_, k.terms[i].k4_prime);
    }
  }

  double log_t(Term term, int i, const Summand& s) const {
    switch (term) {
      case Term::kI11: return moments::log_whittaker_route(s.order, shift_, s.rate);
      case Term::kI12: return moments::log_incomplete_gamma_route(shift_, s.rate);
      default: return outage_.at(i).at(s.order);
    }
  }

 private:
  double shift_;
  std::array<std::vector<double>, 3> outage_;
};

double closed_value(const MomentTable& table, Term term, int i, const Summand& s) {
  return s.sign * std::exp(s.log_abs_coef + table.log_t(term, i, s));
}

template <class Visit>
void for_each_summand(const HighSnrKernel& k, const DerivedChannelConstants& c, bool with_outage, Visit&& visit) {
  for (Term term : {Term::kI11, Term::kI12}) {
    for (int i = 0; i < 3; ++i) {
      Summand s{};
      if (summand(k, c, term, i, 0, s)) visit(term, i, 0, s);
    }
  }
  if (!with_outage) return;
  const int order = static_cast<int>(c.h_weights.size()) - 1;
  for (Term term : {Term::kI21, Term::kI22}) {
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m <= order; ++m) {
        Summand s{};
        if (summand(k, c, term, i, m, s)) visit(term, i, m, s);
      }
    }
  }
}

void accumulate(ClosedFormTerms& t, Term term, double v) {
  switch (term) {
    case Term::kI11: t.i11 += v; break;
    case Term::kI12: t.i12 += v; break;
    case Term::kI21: t.i21 += v; break;
    case Term::kI22: t.i22 += v; break;
  }
}

}  // namespace

std::vector<TermComponent> closed_form_components(const HighSnrKernel& k, const DerivedChannelConstants& c) {
  std::vector<TermComponent> out;
  const MomentTable table(k, c);
  for_each_summand(k, c, true, [&](Term term, int i, int m, const Summand& s) {
    out.push_back({term, i, m, closed_value(table, term, i, s)});
  });
  return out;
}

double component_quadrature(const HighSnrKernel& k, const DerivedChannelConstants& c, Term term, int i, int m,
                            double rel_tol) {
  const KernelTerm& kt = k.terms.at(i);
  const bool outage = term == Term::kI21 || term == Term::kI22;
  const bool with_slope = term == Term::kI11 || term == Term::kI21;
  if (outage && (m < 0 || static_cast<std::size_t>(m) >= c.h_weights.size())) {
    throw DomainError("closed form: outage index m=" + std::to_string(m) + " outside the FOV series");
  }
  const double factor = with_slope ? kt.slope : kt.k3;
  const double h = outage ? c.h_weights[m] : 1.0;
  if (factor == 0.0 || h == 0.0) return 0.0;
  const double rate = outage ? kt.k4_prime : kt.k4;
  const double shift = k.sqrt_shift();
  const double sd = k.orientation_sd;
  // theta-integrands as they come out of the ln h integral:
  //   I11: t^3 sqrt(t^2 + c) e^{-K4 t^2},   I12: t sqrt(t^2 + c) e^{-K4 t^2},
  //   I21, I22: the same with H(m) (t/sd)^{2m} e^{-K4' t^2}.
  const double power = with_slope ? 3.0 : 1.0;
  const double mm = outage ? static_cast<double>(m) : 0.0;
  auto log_f = [&](double t) {
    return 2.0 * mm * std::log(t / sd) + power * std::log(t) + 0.5 * std::log(t * t + shift) - rate * t * t;
  };
  const double peak = std::sqrt((mm + 0.5 * power + 1.0) / rate);
  const double log_integral = log_integrate(
      log_f, peak, rate, rel_tol, "closed-form twin " + to_string(term) + " i=" + std::to_string(i + 1) + " m=" + std::to_string(m));
  const double sign = factor < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(kt.log_k2 + std::log(std::abs(factor)) + std::log(h) + log_integral);
}

ClosedFormTerms closed_form_terms(const HighSnrKernel& k, const DerivedChannelConstants& c) {
  ClosedFormTerms t;
  const MomentTable table(k, c);
  for_each_summand(k, c, true, [&](Term term, int i, int, const Summand& s) { accumulate(t, term, closed_value(table, term, i, s)); });
  return t;
}

VerifiedTerms closed_form_terms_verified(const HighSnrKernel& k, const DerivedChannelConstants& c, double rel_tol) {
  VerifiedTerms out;
  const MomentTable table(k, c);
  for_each_summand(k, c, true, [&](Term term, int i, int m, const Summand& s) {
    const double closed = closed_value(table, term, i, s);
    const double twin = component_quadrature(k, c, term, i, m);
    const double err = std::abs(closed - twin) / std::max(std::abs(twin), 1e-300);
    if (err > rel_tol) {
      out.discrepancies.push_back({{term, i, m, closed}, twin, err});
      accumulate(out.terms, term, twin);
    } else {
      accumulate(out.terms, term, closed);
    }
  });
  return out;
}

double capacity_closed_form(const HighSnrKernel& k, const DerivedChannelConstants& c) {
  return closed_form_terms(k, c).capacity_nats();
}

double capacity_large_fov(const HighSnrKernel& k, const DerivedChannelConstants& c) {
  ClosedFormTerms t;
  const MomentTable table(k, c, false);
  for_each_summand(k, c, false, [&](Term term, int i, int, const Summand& s) { accumulate(t, term, closed_value(table, term, i, s)); });
  return t.i1();
}

}  // namespace uavfso
