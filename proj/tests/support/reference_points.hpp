#pragma once

#include <array>
#include <functional>

#include "uavfso/capacity.hpp"
#include "uavfso/channel.hpp"
#include "uavfso/noise.hpp"

namespace uavfso::testing {

/// Design-table link with the given orientation spread, beam width and FOV.
LinkParameters reference_link(double orientation_sd_mrad, double beam_width_m, double fov_mrad = 25.0, int series_order = 10);

/// Design-table receiver at the given transmit power, lens area matched to link.
NoiseModel reference_noise(const LinkParameters& link, double transmit_power_dbm = 10.0);

inline constexpr std::array<double, 3> kOrientationSdsMrad{2.0, 7.0, 10.0};
inline constexpr std::array<double, 3> kBeamWidthsM{0.5, 2.0, 4.0};
inline constexpr std::array<double, 3> kFovsMrad{10.0, 25.0, 40.0};

/// Continuous-part expectation of g(ln h), computed from scratch with Boost
/// quadrature (Gauss-Kronrod in the angle, tanh-sinh in ln h). Shares no code
/// with ChannelPdf beyond the LinkParameters struct.
double boost_expectation(const LinkParameters& p, const std::function<double(double)>& g);

double boost_total_probability(const LinkParameters& p);
double boost_exact_capacity(const LinkParameters& p, const NoiseModel& n);

/// int_0^inf t^{2n+1} sqrt(t^2 + c) e^{-k t^2} dt by Boost exp-sinh.
double boost_moment(int n, double shift, double rate);

}  // namespace uavfso::testing
