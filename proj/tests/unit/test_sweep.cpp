#include <gtest/gtest.h>

#include <cmath>

#include "reference_points.hpp"
#include "uavfso/error.hpp"
#include "uavfso/sweep.hpp"

using uavfso::CapacityPath;
using uavfso::SweepParameter;
using uavfso::SweepSpec;

namespace {

SweepSpec width_sweep(double sd_mrad, int count = 12) {
  SweepSpec s;
  s.parameter = SweepParameter::kBeamWidth;
  s.lo = 0.5;
  s.hi = 6.0;
  s.count = count;
  s.base.link = uavfso::testing::reference_link(sd_mrad, 2.0);
  s.base.noise = uavfso::testing::reference_noise(s.base.link, 10.0);
  return s;
}

}  // namespace

TEST(Sweep, ParameterNamesAndUnits) {
  for (auto p : {SweepParameter::kBeamWidth, SweepParameter::kFovAngle, SweepParameter::kTransmitPower,
                 SweepParameter::kOrientationSd}) {
    EXPECT_EQ(uavfso::parse_parameter(uavfso::parameter_name(p)), p);
  }
  EXPECT_EQ(uavfso::parameter_unit(SweepParameter::kFovAngle), "mrad");
  EXPECT_FALSE(uavfso::parse_parameter("wz").has_value());
}

TEST(Sweep, ApplyUsesDisplayUnits) {
  uavfso::OperatingPoint base;
  base.noise = uavfso::testing::reference_noise(base.link);
  EXPECT_DOUBLE_EQ(uavfso::with_parameter(base, SweepParameter::kFovAngle, 12.0).link.fov_angle, 12e-3);
  EXPECT_DOUBLE_EQ(uavfso::with_parameter(base, SweepParameter::kOrientationSd, 3.0).link.orientation_sd, 3e-3);
  EXPECT_NEAR(uavfso::with_parameter(base, SweepParameter::kTransmitPower, 20.0).noise.transmit_power, 0.1, 1e-16);
  EXPECT_DOUBLE_EQ(uavfso::with_parameter(base, SweepParameter::kBeamWidth, 3.5).link.beam_width, 3.5);
}

TEST(Sweep, SpecValidation) {
  auto s = width_sweep(5.0);
  s.lo = 3.0;
  s.hi = 2.0;
  EXPECT_THROW(uavfso::validate(s), uavfso::DomainError);
  s = width_sweep(5.0);
  s.hi = 8.0;
  EXPECT_THROW(uavfso::validate(s), uavfso::DomainError);
  s.allow_out_of_range = true;
  EXPECT_NO_THROW(uavfso::validate(s));
  s = width_sweep(5.0);
  s.paths.clear();
  EXPECT_THROW(uavfso::validate(s), uavfso::DomainError);
  s = width_sweep(5.0);
  s.count = 0;
  EXPECT_THROW(uavfso::validate(s), uavfso::DomainError);
}

TEST(Sweep, SinglePointEqualsDirectEvaluation) {
  auto s = width_sweep(5.0);
  s.lo = s.hi = 2.5;
  s.paths = {CapacityPath::kExact, CapacityPath::kClosed};
  const auto r = uavfso::grid_sweep(s);
  ASSERT_EQ(r.rows.size(), 1u);
  auto link = s.base.link;
  link.beam_width = 2.5;
  const auto direct = uavfso::evaluate_capacity(link, s.base.noise, s.paths);
  EXPECT_EQ(*r.rows[0].bits[0], direct.value_bits(CapacityPath::kExact));
  EXPECT_EQ(*r.rows[0].bits[static_cast<int>(CapacityPath::kClosed)], direct.value_bits(CapacityPath::kClosed));
}

TEST(Sweep, ThreadCountDoesNotChangeRows) {
  auto s = width_sweep(7.0, 9);
  s.paths = {CapacityPath::kExact, CapacityPath::kClosed};
  s.threads = 1;
  const auto serial = uavfso::grid_sweep(s);
  s.threads = 4;
  const auto parallel = uavfso::grid_sweep(s);
  ASSERT_EQ(serial.rows.size(), parallel.rows.size());
  for (std::size_t j = 0; j < serial.rows.size(); ++j) {
    EXPECT_EQ(serial.rows[j].value, parallel.rows[j].value);
    EXPECT_EQ(serial.rows[j].bits, parallel.rows[j].bits);
    if (j) {
      EXPECT_GT(serial.rows[j].value, serial.rows[j - 1].value);
    }
  }
}

TEST(Sweep, FailingPointIsRecordedAndSweepContinues) {
  auto s = width_sweep(5.0, 3);
  s.parameter = SweepParameter::kFovAngle;
  s.lo = 0.0;
  s.hi = 20.0;
  s.allow_out_of_range = true;
  const auto r = uavfso::grid_sweep(s);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_FALSE(r.rows[0].ok());
  EXPECT_TRUE(r.rows[1].ok());
  EXPECT_TRUE(r.rows[2].ok());
  EXPECT_EQ(r.argmax(CapacityPath::kExact).value_or(0), r.rows[1].bits[0] > r.rows[2].bits[0] ? 1u : 2u);
}

TEST(Sweep, PowerSweepIsIncreasing) {
  auto s = width_sweep(5.0);
  s.parameter = SweepParameter::kTransmitPower;
  s.lo = 0.0;
  s.hi = 40.0;
  s.count = 5;
  const auto r = uavfso::grid_sweep(s);
  for (std::size_t j = 1; j < r.rows.size(); ++j) EXPECT_GT(*r.rows[j].bits[0], *r.rows[j - 1].bits[0]);
}

TEST(Argmax, ConstantObjectiveReturnsLowerEnd) {
  const auto o = uavfso::argmax_1d([](double) { return 1.0; }, 0.2, 6.0, 25, true);
  EXPECT_EQ(o.parameter, 0.2);
  EXPECT_TRUE(o.at_boundary);
}

TEST(Argmax, RefinementFindsSmoothPeakAndNeverLosesGround) {
  const auto f = [](double x) { return -std::pow(x - 2.37, 2); };
  const auto coarse = uavfso::argmax_1d(f, 0.0, 6.0, 7, false);
  const auto fine = uavfso::argmax_1d(f, 0.0, 6.0, 7, true);
  EXPECT_EQ(coarse.parameter, 2.0);
  EXPECT_NEAR(fine.parameter, 2.37, 1e-5);
  EXPECT_GE(fine.capacity_bits, coarse.capacity_bits);
  EXPECT_FALSE(fine.at_boundary);
}

TEST(Argmax, WidthOptimumInteriorAndOrdered) {
  double prev = 0.0;
  for (double sd : {2.0, 7.0, 10.0}) {
    auto s = width_sweep(sd, 23);
    s.lo = 0.5;
    s.hi = 6.0;
    const auto o = uavfso::argmax_1d(s, CapacityPath::kExact, true);
    EXPECT_FALSE(o.at_boundary) << sd;
    EXPECT_GE(o.parameter, prev) << sd;
    prev = o.parameter;
  }
}

TEST(Penalty, SameSpreadHasNoGap) {
  const auto s = width_sweep(7.0);
  const auto p = uavfso::penalty_of_worst_case_design(7e-3, 7e-3, s);
  EXPECT_EQ(p.gap, 0.0);
  EXPECT_EQ(p.design_width, p.optimal_width);
}

TEST(Penalty, GapIsNonNegative) {
  const auto s = width_sweep(10.0);
  const auto p = uavfso::penalty_of_worst_case_design(10e-3, 2e-3, s);
  EXPECT_GE(p.gap, 0.0);
  EXPECT_GT(p.design_width, p.optimal_width);
  auto bad = s;
  bad.parameter = SweepParameter::kFovAngle;
  EXPECT_THROW(uavfso::penalty_of_worst_case_design(10e-3, 2e-3, bad), uavfso::DomainError);
}
