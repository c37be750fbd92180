#include "uavfso/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uavfso/error.hpp"
#include "uavfso/kernel.hpp"
#include "uavfso/specfun.hpp"

namespace uavfso {
namespace {

double softplus(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

quad::Options outer_options(double rel_tol) { return {.rel_tol = rel_tol, .abs_tol = 0.0, .max_subdivisions = 400}; }
quad::Options inner_options(double rel_tol) { return {.rel_tol = 0.01 * rel_tol, .abs_tol = 0.0, .max_subdivisions = 400}; }

// E[g(ln h)] with the Q function of the conditional density replaced by
// sum_i a_i exp(-a'_i x^2). The approximation is applied on both sides of the
// knee, as in the derivation of the closed form.
template <class G>
quad::Result expectation_q_approx(const ChannelPdf& pdf, G&& g, double rel_tol) {
  const LinkParameters& p = pdf.params();
  const DerivedChannelConstants& c = pdf.constants();
  const double log_a0_hl = c.log_a0_hl(p.attenuation);
  const double log_scale = c.log_c_a + c.gamma_sq * log_a0_hl;
  bool inner_ok = true;
  auto over_y = [&](double theta) {
    const double w = pdf.angle_weight(theta);
    if (w == 0.0) return 0.0;
    const auto shape = pdf.conditional_shape(theta);
    const double z2t2 = p.link_length * p.link_length * theta * theta;
    const double base = log_scale + z2t2 / (2.0 * p.position_sd * p.position_sd);
    auto f = [&](double y) {
      const double x = (y - shape.knee) / shape.spread;
      double dens = 0.0;
      for (std::size_t i = 0; i < specfun::kQApprox.a.size(); ++i) {
        const double ld = base + c.gamma_sq * y + std::log(specfun::kQApprox.a[i]) - specfun::kQApprox.a_prime[i] * x * x;
        if (ld > -745.0) dens += std::exp(ld);
      }
      return dens == 0.0 ? 0.0 : g(y + log_a0_hl) * dens;
    };
    const auto pts = pdf.conditional_breakpoints(theta);
    const auto r = quad::integrate(f, std::span<const double>(pts), inner_options(rel_tol));
    inner_ok = inner_ok && r.converged;
    return w * r.value;
  };
  const double s = p.orientation_sd;
  std::vector<double> pts{0.0};
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    if (k * s < pdf.angle_cutoff()) pts.push_back(k * s);
  }
  pts.push_back(pdf.angle_cutoff());
  auto r = quad::integrate(over_y, std::span<const double>(pts), outer_options(rel_tol));
  r.converged = r.converged && inner_ok;
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string_view path_name(CapacityPath p) {
  switch (p) {
    case CapacityPath::kExact: return "exact";
    case CapacityPath::kOracle: return "oracle";
    case CapacityPath::kOracleQ: return "oracle_q";
    case CapacityPath::kClosed: return "closed";
    case CapacityPath::kLargeFov: return "largefov";
  }
  return "?";
}

std::optional<CapacityPath> parse_path(std::string_view name) {
  for (CapacityPath p : kAllPaths) {
    if (path_name(p) == name) return p;
  }
  return std::nullopt;
}

double snr_at_peak_gain(const LinkParameters& p, const NoiseModel& n) {
  const auto c = derive_constants(p);
  const double g = c.a0 * p.attenuation;
  return snr_per_unit_gain(n, p.fov_angle) * g * g;
}

double capacity_exact(const LinkParameters& p, const NoiseModel& n, double rel_tol) {
  validate(n, p);
  const ChannelPdf pdf(p);
  const double k1 = std::log(snr_per_unit_gain(n, p.fov_angle));
  const auto r = pdf.expectation([&](double log_h) { return softplus(k1 + 2.0 * log_h); }, outer_options(rel_tol),
                                 inner_options(rel_tol));
  quad::require_converged(r, "capacity_exact");
  return r.value;
}

OracleResult capacity_highsnr_oracle(const LinkParameters& p, const NoiseModel& n, bool use_q_approx,
                                     const CapacityOptions& opt) {
  validate(n, p);
  const ChannelPdf pdf(p);
  const double k1 = std::log(snr_per_unit_gain(n, p.fov_angle));
  auto g = [&](double log_h) { return k1 + 2.0 * log_h; };
  const auto r = use_q_approx ? expectation_q_approx(pdf, g, opt.rel_tol)
                              : pdf.expectation(g, outer_options(opt.rel_tol), inner_options(opt.rel_tol));
  quad::require_converged(r, use_q_approx ? "capacity_highsnr_oracle (Q approximation)" : "capacity_highsnr_oracle");
  OracleResult out;
  out.nats = r.value;
  const double peak = snr_at_peak_gain(p, n);
  if (!(peak > opt.high_snr_threshold)) {
    out.warnings.push_back("high-SNR form outside its regime: snr (A0 h_l)^2 = " + fmt(peak) +
                           " <= " + fmt(opt.high_snr_threshold));
  }
  return out;
}

double CapacityReport::relative_delta(CapacityPath x, CapacityPath ref) const {
  const double r = value_nats(ref);
  return std::abs(value_nats(x) - r) / std::abs(r);
}

CapacityReport evaluate_capacity(const LinkParameters& p, const NoiseModel& n, std::span<const CapacityPath> paths,
                                 const CapacityOptions& opt) {
  validate(p);
  validate(n, p);
  CapacityReport report;
  auto want = [&](CapacityPath x) { return std::find(paths.begin(), paths.end(), x) != paths.end(); };
  auto set = [&](CapacityPath x, double v) { report.nats[static_cast<std::size_t>(x)] = v; };
  auto add_warnings = [&](const std::vector<std::string>& w) {
    for (const auto& s : w) {
      if (std::find(report.warnings.begin(), report.warnings.end(), s) == report.warnings.end()) report.warnings.push_back(s);
    }
  };

  if (want(CapacityPath::kExact)) set(CapacityPath::kExact, capacity_exact(p, n, opt.rel_tol));
  if (want(CapacityPath::kOracle)) {
    auto r = capacity_highsnr_oracle(p, n, false, opt);
    set(CapacityPath::kOracle, r.nats);
    add_warnings(r.warnings);
  }
  if (want(CapacityPath::kOracleQ)) {
    auto r = capacity_highsnr_oracle(p, n, true, opt);
    set(CapacityPath::kOracleQ, r.nats);
    add_warnings(r.warnings);
  }
  if (want(CapacityPath::kClosed) || want(CapacityPath::kLargeFov)) {
    const auto c = derive_constants(p);
    const auto k = build_kernel(c, p, n);
    ClosedFormTerms terms;
    if (opt.verify_closed_form) {
      auto v = closed_form_terms_verified(k, c, opt.verify_rel_tol);
      terms = v.terms;
      for (const auto& d : v.discrepancies) {
        add_warnings({"closed form " + to_string(d.component.term) + " i=" + std::to_string(d.component.i + 1) +
                      " m=" + std::to_string(d.component.m) + " replaced by quadrature (relative error " +
                      fmt(d.relative_error) + ")"});
      }
      report.discrepancies = std::move(v.discrepancies);
    } else {
      terms = closed_form_terms(k, c);
    }
    report.i_terms = terms;
    if (want(CapacityPath::kClosed)) set(CapacityPath::kClosed, terms.capacity_nats());
    if (want(CapacityPath::kLargeFov)) set(CapacityPath::kLargeFov, terms.i1());
    const double peak = snr_at_peak_gain(p, n);
    if (!(peak > opt.high_snr_threshold)) {
      add_warnings({"high-SNR form outside its regime: snr (A0 h_l)^2 = " + fmt(peak) + " <= " +
                    fmt(opt.high_snr_threshold)});
    }
  }
  return report;
}

}  // namespace uavfso
