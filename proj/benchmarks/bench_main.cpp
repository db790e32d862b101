#include <benchmark/benchmark.h>

#include <casimir/constants.hpp>
#include <casimir/integrate.hpp>
#include <casimir/kernels.hpp>
#include <casimir/observables.hpp>

using namespace casimir;

namespace {

DielectricModel glass() {
  return DielectricModel::drude_lorentz(1.0, {{2.0e16, 2.1e16, 1e14}, {1.9e14, 2.4e14, 1.0e13}});
}
DielectricModel doped() { return DielectricModel::drude_lorentz(1.0, {{6.6e15, 2.2e16, 1e13}, {0.0, 3.5e14, 5e13}}); }

SlabPairLayout layout(double d) { return {{glass(), 2e-6}, {doped(), 1000e-6}, d}; }

}  // namespace

static void BM_SlabCoefficients(benchmark::State& state) {
  const SlabSpec slab{glass(), 2e-6};
  const double w = 2e14;
  double k = 0.3 * w / constants::c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slab_coefficients(slab, Polarization::TM, w, k));
    k *= 1.0000001;
  }
}
BENCHMARK(BM_SlabCoefficients);

static void BM_SpectralPoint(benchmark::State& state) {
  const auto L = layout(1e-6);
  const double w = 2e14;
  double k = 0.5 * w / constants::c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slab_pair_point(L, Polarization::TE, w, k));
    k *= 1.0000001;
  }
}
BENCHMARK(BM_SpectralPoint);

static void BM_HeatBrackets(benchmark::State& state) {
  const double w = 2e14;
  const auto pt = slab_pair_point(layout(1e-6), Polarization::TE, w, 0.5 * w / constants::c);
  for (auto _ : state) benchmark::DoNotOptimize(heat_brackets(pt));
}
BENCHMARK(BM_HeatBrackets);

static void BM_UnifiedKernel(benchmark::State& state) {
  const double w = 2e14;
  const auto pt = slab_pair_point(layout(1e-6), Polarization::TM, w, 0.5 * w / constants::c);
  const ThermalTriple T{300.0, 0.0, 400.0};
  for (auto _ : state) benchmark::DoNotOptimize(kernel_delta_general_diagonal(1, pt, T));
}
BENCHMARK(BM_UnifiedKernel);

static void BM_AdaptivePlanck(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  auto f = [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_1d(f, 0.0, INFINITY, cfg, {}, 3.0));
}
BENCHMARK(BM_AdaptivePlanck);

static void BM_HeatObservable(benchmark::State& state) {
  QuadratureConfig cfg;
  const auto L = layout(static_cast<double>(state.range(0)) * 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(observable_heat(L, {300.0, 0.0, 400.0}, cfg));
}
BENCHMARK(BM_HeatObservable)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_MirrorPressure(benchmark::State& state) {
  QuadratureConfig cfg;
  const SlabSpec mirror{DielectricModel::perfect_mirror(), 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_pressure({mirror, mirror, 1e-6}, 0.0, cfg));
}
BENCHMARK(BM_MirrorPressure)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
