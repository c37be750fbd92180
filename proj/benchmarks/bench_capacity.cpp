#include <benchmark/benchmark.h>

#include <array>

#include "uavfso/capacity.hpp"
#include "uavfso/closed_form.hpp"
#include "uavfso/kernel.hpp"
#include "uavfso/noise.hpp"
#include "uavfso/specfun.hpp"

namespace {

using namespace uavfso;

LinkParameters link_at(double sd_mrad) {
  LinkParameters p;
  p.orientation_sd = sd_mrad * 1e-3;
  return p;
}

NoiseModel noise_for(const LinkParameters& p) { return make_noise_model(p, 0.6, dbm_to_watts(10.0)); }

void BM_ClosedForm(benchmark::State& state) {
  const auto p = link_at(static_cast<double>(state.range(0)));
  const auto n = noise_for(p);
  for (auto _ : state) {
    const auto c = derive_constants(p);
    benchmark::DoNotOptimize(capacity_closed_form(build_kernel(c, p, n), c));
  }
}
BENCHMARK(BM_ClosedForm)->Arg(2)->Arg(7)->Arg(10);

void BM_ExactCapacity(benchmark::State& state) {
  const auto p = link_at(static_cast<double>(state.range(0)));
  const auto n = noise_for(p);
  for (auto _ : state) benchmark::DoNotOptimize(capacity_exact(p, n));
}
BENCHMARK(BM_ExactCapacity)->Arg(2)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_QApproxOracle(benchmark::State& state) {
  const auto p = link_at(7.0);
  const auto n = noise_for(p);
  for (auto _ : state) benchmark::DoNotOptimize(capacity_highsnr_oracle(p, n, true).nats);
}
BENCHMARK(BM_QApproxOracle)->Unit(benchmark::kMillisecond);

void BM_Whittaker(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_whittaker_w(-(2 * n - 1) / 4, -(2 * n + 3) / 4, 0.37));
  }
}
BENCHMARK(BM_Whittaker)->Arg(0)->Arg(1)->Arg(6)->Arg(11);

// Outage moments T(0..M+1) at one rate, kc ~ 25 where the per-order route is slowest.
void BM_MomentFamily(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moments::log_whittaker_family(n_max, 2.5e-5, 1e6));
}
BENCHMARK(BM_MomentFamily)->Arg(11)->Arg(41)->Arg(151);

void BM_IncompleteGamma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::log_upper_incomplete_gamma(1.5, 0.37));
}
BENCHMARK(BM_IncompleteGamma);

}  // namespace

BENCHMARK_MAIN();
