#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "uavfso/cli/commands.hpp"
#include "uavfso/cli/config.hpp"
#include "uavfso/cli/table.hpp"

using namespace uavfso::cli;

namespace {

std::string render(const OutputTable& t) {
  std::ostringstream os;
  t.write(os);
  return os.str();
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EmptyTextGivesDefaultsWithoutPower) {
  const auto c = parse_config("");
  EXPECT_EQ(c, default_config());
  EXPECT_FALSE(c.transmit_power_set);
  EXPECT_DOUBLE_EQ(c.link.wavelength, 1550e-9);
  EXPECT_DOUBLE_EQ(c.noise.pd_bandwidth, 1e9);
}

TEST(Config, UnitsConvertToBase) {
  const auto c = parse_config("sigma_theta = 5 mrad\nr_a = 4 cm  # comment\nB_o = 20 nm\nlambda=850nm\nP_t = 10 dBm\n");
  EXPECT_DOUBLE_EQ(c.link.orientation_sd, 0.005);
  EXPECT_DOUBLE_EQ(c.link.aperture_radius, 0.04);
  EXPECT_NEAR(c.noise.lens_area_cm2, 16.0 * M_PI, 1e-12);
  EXPECT_DOUBLE_EQ(c.noise.optical_bandwidth_um, 0.02);
  EXPECT_DOUBLE_EQ(c.link.wavelength, 850e-9);
  EXPECT_TRUE(c.transmit_power_set);
  EXPECT_NEAR(c.noise.transmit_power, 0.01, 1e-17);
}

TEST(Config, OverridesWinOverFile) {
  const auto c = parse_config("w_z = 3 m\n", {"w_z=150 cm"});
  EXPECT_DOUBLE_EQ(c.link.beam_width, 1.5);
}

TEST(Config, Errors) {
  EXPECT_NE(error_of([] { parse_config("w_z = -1 m"); }).find("w_z must be > 0"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("beam = 2 m"); }).find("unknown key 'beam'"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("sigma_theta = 5"); }).find("needs a unit"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("sigma_theta = 5 deg"); }).find("unsupported unit"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("M = 2.5"); }).find("integer"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("h_l = 2"); }).find("out of range"), std::string::npos);
  EXPECT_NE(error_of([] { parse_config("w_z 2 m"); }).find("line 1"), std::string::npos);
  EXPECT_NE(error_of([] { load_config("/nonexistent/file.cfg"); }).find("cannot open"), std::string::npos);
}

TEST(Config, EchoRoundTrips) {
  const auto c = parse_config("sigma_theta = 7.3 mrad\nw_z = 2.71 m\nP_t = 13.7 dBm\nB_o = 7 nm\nM = 6\n");
  EXPECT_EQ(parse_config(join_lines(echo_config(c))), c);
  const auto d = default_config();
  EXPECT_EQ(parse_config(join_lines(echo_config(d))), d);
}

TEST(Table, FormatsAndQuotes) {
  EXPECT_EQ(format_cell(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_cell(std::monostate{}), "");
  EXPECT_EQ(format_cell(std::string("a,b")), "\"a,b\"");
  EXPECT_EQ(format_cell(std::string("say \"hi\"")), "\"say \"\"hi\"\"\"");
  OutputTable t({"x", "y"});
  t.add_metadata("k", "v");
  t.add_row({1.0, std::string("ok")});
  EXPECT_EQ(render(t), "# k: v\nx,y\n1,ok\n");
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
}

TEST(Table, EmitReportsIoFailure) {
  OutputTable t({"x"});
  EXPECT_THROW(emit(t, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST(Commands, ParseSweepAndPaths) {
  const auto r = parse_sweep_range("w_z=0.2:6:25");
  EXPECT_EQ(r.parameter, uavfso::SweepParameter::kBeamWidth);
  EXPECT_EQ(r.count, 25);
  EXPECT_EQ(parse_sweep_range("P_t=0:40").count, 25);
  EXPECT_THROW(parse_sweep_range("foo=1:2:3"), ConfigError);
  EXPECT_THROW(parse_sweep_range("w_z=3:2:3"), ConfigError);
  EXPECT_THROW(parse_sweep_range("w_z=1:2:x"), ConfigError);
  const auto p = parse_paths("exact,closed,closed");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_THROW(parse_paths("exact,bogus"), ConfigError);
}

TEST(Commands, EvalNeedsPowerAndReportsAllPaths) {
  EXPECT_THROW(run_eval(default_config(), {}), ConfigError);
  const auto out = run_eval(parse_config("P_t = 10 dBm"), {});
  EXPECT_FALSE(out.failed);
  ASSERT_EQ(out.table.rows().size(), 5u);
  const double closed_vs_oracle = std::get<double>(out.table.rows()[2][4]);
  EXPECT_LT(closed_vs_oracle, 5e-3);
}

TEST(Commands, SweepIsDeterministicAndEmptySweepIsHeaderOnly) {
  CommandOptions o;
  o.sweep = parse_sweep_range("w_z=0.5:6:6");
  o.paths = parse_paths("exact,closed");
  o.threads = 3;
  const auto cfg = parse_config("P_t = 10 dBm\nsigma_theta = 10 mrad");
  const auto a = run_sweep(cfg, o);
  const auto b = run_sweep(cfg, o);
  EXPECT_EQ(render(a.table), render(b.table));
  EXPECT_EQ(a.table.rows().size(), 6u);
  o.sweep->count = 0;
  const auto empty = run_sweep(cfg, o);
  EXPECT_TRUE(empty.table.rows().empty());
  EXPECT_FALSE(empty.failed);
  const std::string text = render(empty.table);
  EXPECT_NE(text.find("\nw_z_m,exact_bits,exact_nats,closed_bits,closed_nats,warnings,status\n"), std::string::npos);
}

TEST(Commands, SweepRowErrorsSetFailure) {
  CommandOptions o;
  o.sweep = parse_sweep_range("theta_fov=0:10:2");
  o.allow_out_of_range = true;
  o.paths = parse_paths("closed");
  const auto out = run_sweep(parse_config("P_t = 10 dBm"), o);
  EXPECT_TRUE(out.failed);
  EXPECT_EQ(std::get<std::string>(out.table.rows()[0].back()).rfind("error: ", 0), 0u);
}

TEST(Commands, OptimizeFindsInteriorWidth) {
  CommandOptions o;
  o.sweep = parse_sweep_range("w_z=0.5:6:12");
  const auto out = run_optimize(parse_config("P_t = 10 dBm\nsigma_theta = 7 mrad"), o);
  ASSERT_EQ(out.table.rows().size(), 1u);
  EXPECT_EQ(std::get<std::string>(out.table.rows()[0][6]), "no");
  EXPECT_NEAR(std::get<double>(out.table.rows()[0][3]), 2.6, 0.1);
}

TEST(Commands, ValidatePassesOnReferenceGrid) {
  const auto out = run_validate(default_config(), {});
  EXPECT_FALSE(out.failed);
  EXPECT_EQ(out.table.rows().size(), 9u + 27u * 3u);
}

TEST(Commands, PdfProbabilityColumnSumsToOne) {
  CommandOptions o;
  o.pdf_points = 200;
  const auto out = run_pdf(default_config(), o);
  double sum = 0.0;
  for (const auto& row : out.table.rows()) sum += std::get<double>(row[3]);
  EXPECT_NEAR(sum, 1.0, 1e-3);
}
