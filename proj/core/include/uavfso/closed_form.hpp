#pragma once

#include <string>
#include <vector>

#include "uavfso/channel.hpp"
#include "uavfso/kernel.hpp"

namespace uavfso {

/// Gaussian moments with a square-root factor,
///   T(n; c, k) = int_0^inf t^{2n+1} sqrt(t^2 + c) e^{-k t^2} dt,  c >= 0, k > 0.
/// Every closed-form capacity term is a weighted sum of these.
namespace moments {

/// ln T through the Whittaker representation
///   T = n!/2 k^{-(2n+5)/4} c^{(2n+1)/4} e^{kc/2} W_{-(2n-1)/4, -(2n+3)/4}(k c).
/// Falls back to Gamma(n + 3/2) / (2 k^{n+3/2}) when c = 0.
double log_whittaker_route(int n, double shift, double rate);

/// ln T(n; c, k) for n = 0..n_max in one pass. With F_n the Whittaker tail
/// (T up to elementary factors) and z = k c,
///   z F_n + (n + 5/2 - z) F_{n+1} - (n + 2) F_{n+2} = 0.
/// Neither direction of that recurrence is stable for n < z, so that stretch is
/// solved as a boundary value problem between F_0 (incomplete gamma) and
/// F_ceil(z) (log_whittaker_route); above it the forward recurrence is stable.
std::vector<double> log_whittaker_family(int n_max, double shift, double rate);

/// ln T(0; c, k) through the incomplete gamma: e^{kc} k^{-3/2} Gamma(3/2, k c) / 2.
double log_incomplete_gamma_route(double shift, double rate);

/// T by adaptive quadrature of the defining integral.
double quadrature(int n, double shift, double rate, double rel_tol = 1e-12);

}  // namespace moments

enum class Term { kI11, kI12, kI21, kI22 };

std::string to_string(Term t);

struct ClosedFormTerms {
  double i11 = 0.0;
  double i12 = 0.0;
  double i21 = 0.0;
  double i22 = 0.0;

  double i1() const { return i11 + i12; }
  double i2() const { return i21 + i22; }
  double capacity_nats() const { return i1() - i2(); }
};

/// One (term, i, m) summand; m is 0 for I11 and I12.
struct TermComponent {
  Term term = Term::kI11;
  int i = 0;
  int m = 0;
  double value = 0.0;
};

/// Summands of I11, I12, I21, I22 from the Whittaker / incomplete-gamma
/// forms, in the order I11 (i), I12 (i), I21 (i, m), I22 (i, m). Summands
/// with H(m) = 0 are omitted.
std::vector<TermComponent> closed_form_components(const HighSnrKernel& k, const DerivedChannelConstants& c);

/// The same summand by quadrature of its theta integral. Throws
/// ConvergenceError if the quadrature fails.
double component_quadrature(const HighSnrKernel& k, const DerivedChannelConstants& c, Term term, int i, int m,
                            double rel_tol = 1e-12);

ClosedFormTerms closed_form_terms(const HighSnrKernel& k, const DerivedChannelConstants& c);

/// A summand whose closed form and quadrature twin disagree.
struct Discrepancy {
  TermComponent component;
  double quadrature = 0.0;
  double relative_error = 0.0;
};

struct VerifiedTerms {
  ClosedFormTerms terms;  ///< quadrature values substituted for every discrepant summand
  std::vector<Discrepancy> discrepancies;
};

/// Closed form with every summand checked against its quadrature twin; the
/// quadrature value is used wherever the two differ by more than rel_tol.
VerifiedTerms closed_form_terms_verified(const HighSnrKernel& k, const DerivedChannelConstants& c, double rel_tol = 1e-6);

/// I11 + I12 - I21 - I22 [nats].
double capacity_closed_form(const HighSnrKernel& k, const DerivedChannelConstants& c);

/// I11 + I12 [nats]: the outage terms dropped, valid for a wide field of view.
double capacity_large_fov(const HighSnrKernel& k, const DerivedChannelConstants& c);

}  // namespace uavfso
