#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "published_forms.hpp"
#include "reference_points.hpp"
#include "uavfso/closed_form.hpp"
#include "uavfso/error.hpp"

namespace mo = uavfso::moments;
using uavfso::Term;
using uavfso::testing::reference_link;
using uavfso::testing::reference_noise;

namespace {

struct Point {
  uavfso::LinkParameters link;
  uavfso::DerivedChannelConstants c;
  uavfso::HighSnrKernel k;
};

Point at(double sd, double w, double fov = 25.0) {
  Point pt{reference_link(sd, w, fov), {}, {}};
  pt.c = uavfso::derive_constants(pt.link);
  pt.k = uavfso::build_kernel(pt.c, pt.link, reference_noise(pt.link));
  return pt;
}

}  // namespace

TEST(Moments, RoutesAgreeWithIndependentQuadrature) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> lc(std::log(1e-6), std::log(1e-1));
  std::uniform_real_distribution<double> lk(std::log(1e2), std::log(1e7));
  std::uniform_int_distribution<int> order(0, 12);
  for (int j = 0; j < 300; ++j) {
    const int n = order(rng);
    const double c = std::exp(lc(rng));
    const double k = std::exp(lk(rng));
    const double ref = uavfso::testing::boost_moment(n, c, k);
    EXPECT_NEAR(std::exp(mo::log_whittaker_route(n, c, k)) / ref, 1.0, 1e-10) << n << " " << c << " " << k;
    EXPECT_NEAR(mo::quadrature(n, c, k) / ref, 1.0, 1e-10) << n << " " << c << " " << k;
    if (n == 0) {
      EXPECT_NEAR(std::exp(mo::log_incomplete_gamma_route(c, k)) / ref, 1.0, 1e-12);
    }
  }
}

TEST(Moments, UnshiftedIsGaussianMoment) {
  for (int n = 0; n < 6; ++n) {
    const double k = 3.7e4;
    const double expect = std::tgamma(n + 1.5) / (2.0 * std::pow(k, n + 1.5));
    EXPECT_NEAR(std::exp(mo::log_whittaker_route(n, 0.0, k)) / expect, 1.0, 1e-13);
    EXPECT_NEAR(mo::quadrature(n, 0.0, k) / expect, 1.0, 1e-11);
  }
  EXPECT_NEAR(std::exp(mo::log_incomplete_gamma_route(0.0, 2.0)), std::tgamma(1.5) / (2.0 * std::pow(2.0, 1.5)), 1e-15);
}

TEST(Moments, DomainChecks) {
  EXPECT_THROW(mo::log_whittaker_route(-1, 1.0, 1.0), uavfso::DomainError);
  EXPECT_THROW(mo::log_whittaker_route(0, 1.0, 0.0), uavfso::DomainError);
  EXPECT_THROW(mo::log_incomplete_gamma_route(-1.0, 1.0), uavfso::DomainError);
}

TEST(ClosedForm, EverySummandMatchesItsIntegral) {
  for (double sd : uavfso::testing::kOrientationSdsMrad) {
    for (double w : uavfso::testing::kBeamWidthsM) {
      const auto pt = at(sd, w);
      for (const auto& comp : uavfso::closed_form_components(pt.k, pt.c)) {
        const double twin = uavfso::component_quadrature(pt.k, pt.c, comp.term, comp.i, comp.m);
        EXPECT_NEAR(comp.value / twin, 1.0, 1e-9)
            << uavfso::to_string(comp.term) << " i=" << comp.i << " m=" << comp.m << " sd=" << sd << " w=" << w;
      }
    }
  }
}

TEST(ClosedForm, TermsSumComponents) {
  const auto pt = at(7.0, 2.0);
  const auto t = uavfso::closed_form_terms(pt.k, pt.c);
  uavfso::ClosedFormTerms sum;
  for (const auto& comp : uavfso::closed_form_components(pt.k, pt.c)) {
    (comp.term == Term::kI11 ? sum.i11 : comp.term == Term::kI12 ? sum.i12 : comp.term == Term::kI21 ? sum.i21 : sum.i22) +=
        comp.value;
  }
  EXPECT_DOUBLE_EQ(t.i11, sum.i11);
  EXPECT_DOUBLE_EQ(t.i22, sum.i22);
  EXPECT_DOUBLE_EQ(t.capacity_nats(), (t.i11 + t.i12) - (t.i21 + t.i22));
  EXPECT_DOUBLE_EQ(uavfso::capacity_closed_form(pt.k, pt.c), t.capacity_nats());
  EXPECT_DOUBLE_EQ(uavfso::capacity_large_fov(pt.k, pt.c), t.i1());
}

TEST(ClosedForm, ReferencePointRegression) {
  // Design-table link, sigma_theta = 5 mrad, w_z = 2 m, theta_FOV = 25 mrad, P_t = 10 dBm.
  const auto pt = at(5.0, 2.0);
  const auto t = uavfso::closed_form_terms(pt.k, pt.c);
  EXPECT_NEAR(t.i11, -2.20498622, 1e-8);
  EXPECT_NEAR(t.i12, 9.01692892, 1e-8);
  EXPECT_NEAR(t.capacity_nats(), 6.81017056, 1e-8);
}

TEST(ClosedForm, OutageTermsVanishForWideFov) {
  auto link = reference_link(1.0, 2.0, 1.0);
  link.fov_angle = 0.2;  // G = 200
  const auto c = uavfso::derive_constants(link);
  const auto k = uavfso::build_kernel(c, link, reference_noise(link));
  const auto t = uavfso::closed_form_terms(k, c);
  EXPECT_EQ(t.i21, 0.0);
  EXPECT_EQ(t.i22, 0.0);
  EXPECT_EQ(uavfso::capacity_large_fov(k, c), t.capacity_nats());
}

TEST(ClosedForm, NoTurbulenceUsesUnshiftedMoments) {
  auto link = reference_link(7.0, 2.0);
  link.log_irradiance_variance = 0.0;
  const auto c = uavfso::derive_constants(link);
  const auto k = uavfso::build_kernel(c, link, reference_noise(link));
  EXPECT_EQ(k.sqrt_shift(), 0.0);
  for (const auto& comp : uavfso::closed_form_components(k, c)) {
    EXPECT_NEAR(comp.value / uavfso::component_quadrature(k, c, comp.term, comp.i, comp.m), 1.0, 1e-9);
  }
}

TEST(ClosedForm, VerifiedModeFindsNoDiscrepancy) {
  const auto pt = at(10.0, 4.0);
  const auto v = uavfso::closed_form_terms_verified(pt.k, pt.c);
  EXPECT_TRUE(v.discrepancies.empty());
  EXPECT_NEAR(v.terms.capacity_nats(), uavfso::capacity_closed_form(pt.k, pt.c), 1e-9);
}

TEST(PublishedForms, LeadingConstantOfFirstTerm) {
  // The typeset I11 carries 1.722 (1 - 3a'); the theta integral gives 2 (1 - 3a').
  const auto pt = at(7.0, 2.0);
  const auto t = uavfso::closed_form_terms(pt.k, pt.c);
  EXPECT_NEAR(uavfso::testing::published::i11_with_typeset_constant(pt.k) / t.i11, 1.722 / 2.0, 1e-12);
}

TEST(PublishedForms, OutageTermsNeedShiftedRate) {
  // With the unshifted rate the summands come out 1.5x to 6x too large here.
  const auto pt = at(7.0, 2.0, 10.0);
  for (Term term : {Term::kI21, Term::kI22}) {
    for (int m : {0, 3}) {
      const double twin = uavfso::component_quadrature(pt.k, pt.c, term, 1, m);
      EXPECT_GT(std::abs(uavfso::testing::published::outage_summand_with_rate_k4(pt.k, pt.c, term, 1, m) / twin - 1.0), 0.25);
      EXPECT_GT(std::abs(uavfso::testing::published::outage_summand_typeset_integrand(pt.k, pt.c, term, 1, m) / twin - 1.0), 0.5);
    }
  }
}

TEST(Moments, FamilyMatchesSingleOrderRoutes) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> lz(std::log(1e-3), std::log(1e4));
  std::uniform_real_distribution<double> lk(std::log(1e2), std::log(1e7));
  std::uniform_int_distribution<int> order(0, 40);
  for (int j = 0; j < 200; ++j) {
    const int n_max = order(rng);
    const double k = std::exp(lk(rng));
    const double c = std::exp(lz(rng)) / k;
    const auto fam = mo::log_whittaker_family(n_max, c, k);
    ASSERT_EQ(fam.size(), static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
      EXPECT_NEAR(fam[n] - std::log(mo::quadrature(n, c, k)), 0.0, 1e-11) << n << " of " << n_max << " kc=" << k * c;
    }
  }
}
