// Serial reference loops against their OpenMP counterparts. Results are
// bit-identical by construction; only the wall time differs.
#include <benchmark/benchmark.h>

#include "orliczcorr/correlation.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/moments.hpp"
#include "orliczcorr/sampling.hpp"
#include "orliczcorr/test_bodies.hpp"

namespace {

using namespace orliczcorr;

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void label(benchmark::State& state) { state.SetLabel(std::string(to_string(mode(state)))); }

void BM_OrderedSum(benchmark::State& state) {
  const auto exec = mode(state);
  for (auto _ : state) {
    const double s = ordered_sum(1 << 16, [](std::size_t k) { return 1.0 / (1.0 + static_cast<double>(k)); }, exec);
    benchmark::DoNotOptimize(s);
  }
  label(state);
}
BENCHMARK(BM_OrderedSum)->Arg(0)->Arg(1);

void BM_SliceTable(benchmark::State& state) {
  const CrossSection cs(BodyModel{exp_poly_ball(4)}, 0, 1);
  const CrossMassGrid grid;
  const auto ys = crossmass_axis(cs.y_max(), grid);
  const auto zs = crossmass_axis(cs.z_max(), grid);
  QuadratureOptions fresh;
  for (auto _ : state) {
    state.PauseTiming();
    const CrossSection uncached(BodyModel{exp_poly_ball(4)}, 0, 1, fresh);
    state.ResumeTiming();
    benchmark::DoNotOptimize(slice_table(uncached, ys, zs, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_SliceTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CrossMassScan(benchmark::State& state) {
  const CrossSection cs(BodyModel{lp_ball(1.5, 5)}, 0, 1);
  const CrossMassGrid grid{48};
  const auto ys = crossmass_axis(cs.y_max(), grid);
  const auto zs = crossmass_axis(cs.z_max(), grid);
  const auto table = slice_table(cs, ys, zs, Execution::serial);
  for (auto _ : state)
    benchmark::DoNotOptimize(crossmass_scan(table, ys.size(), zs.size(), grid.tolerance, mode(state)));
  label(state);
}
BENCHMARK(BM_CrossMassScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CovarianceFormula(benchmark::State& state) {
  const CrossSection cs(BodyModel{lp_ball(3.0, 4)}, 0, 1);
  const auto sq = UnivariateTestFn::square();
  FormulaOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(cov_via_formula(cs, sq, sq, opts));
  label(state);
}
BENCHMARK(BM_CovarianceFormula)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SamplerChains(benchmark::State& state) {
  const BodyModel body = lp_ball(2.0, 16);
  SamplerConfig cfg;
  cfg.direction = DirectionMode::coordinate;
  cfg.chains = 8;
  cfg.samples_per_chain = 5000;
  cfg.execution = mode(state);
  for (auto _ : state) {
    MomentAccumulator acc(16, cfg.chains, cfg.samples_per_chain);
    run_sampler(body, cfg, [&](std::size_t c, std::size_t k, Point x) { acc.add(c, k, x); });
    benchmark::DoNotOptimize(acc.finish("bench", cfg.method));
  }
  label(state);
}
BENCHMARK(BM_SamplerChains)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
