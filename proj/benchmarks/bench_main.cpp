#include <benchmark/benchmark.h>

#include <random>

#include "pcn/discrete_info.hpp"
#include "pcn/gaussian_oracle.hpp"
#include "pcn/gaussian_region.hpp"
#include "pcn/polyhedra.hpp"
#include "pcn/scenario.hpp"
#include "pcn/verify.hpp"

namespace {

void BM_SweepRegion(benchmark::State& state) {
  const auto cfg = pcn::find_preset("e")->channel;
  const auto grid = pcn::GridSpec::uniform(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcn::sweep_region(cfg, grid));
  state.counters["slices"] = static_cast<double>(state.range(0) * state.range(0) * state.range(0) * state.range(0));
}
BENCHMARK(BM_SweepRegion)->Arg(9)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_PdfSlice(benchmark::State& state) {
  const auto cfg = pcn::find_preset("b")->channel;
  const pcn::SplitParams s{0.3, 0.6, 0.2, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(pcn::pdf_region_slice(cfg, s));
}
BENCHMARK(BM_PdfSlice);

void BM_GaussianConditionalMi(benchmark::State& state) {
  using enum pcn::Var;
  const auto cov = pcn::build_covariance(pcn::find_preset("b")->channel, {0.3, 0.6, 0.2, 0.7});
  for (auto _ : state) benchmark::DoNotOptimize(pcn::conditional_mi(cov, {Y4}, {X1, X2}, {U1, U2, X3}));
}
BENCHMARK(BM_GaussianConditionalMi);

void BM_DiscreteRegionConstants(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto p = pcn::make_network_pmf(pcn::random_network_factors(rng));
  for (auto _ : state) benchmark::DoNotOptimize(pcn::eval_region1(p));
}
BENCHMARK(BM_DiscreteRegionConstants)->Unit(benchmark::kMicrosecond);

void BM_FourierMotzkinProjection(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto sys = pcn::split_rate_system(pcn::random_rational_bounds(rng, true));
  const std::vector<std::string> vars{"R11", "R12"};
  for (auto _ : state) benchmark::DoNotOptimize(pcn::project(sys, vars));
}
BENCHMARK(BM_FourierMotzkinProjection)->Unit(benchmark::kMicrosecond);

void BM_RegionsEqual(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto k = pcn::random_rational_bounds(rng, true);
  const std::vector<std::string> vars{"R11", "R12"};
  const auto proj = pcn::project(pcn::split_rate_system(k), vars).system;
  const auto red = pcn::reduced_rate_system(k);
  for (auto _ : state) benchmark::DoNotOptimize(pcn::regions_equal(proj, red));
}
BENCHMARK(BM_RegionsEqual)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
