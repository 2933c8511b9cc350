#include <benchmark/benchmark.h>

#include <complex>

#include "diskmean/characteristic.hpp"
#include "diskmean/meanvalue.hpp"
#include "diskmean/zeroscan.hpp"

using namespace diskmean;
using C = std::complex<double>;

// The three Bessel evaluation bands have very different cost profiles; the
// arguments below land one benchmark in each.
static void BM_BesselSeries(benchmark::State& state) {
  const C w{3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(2, w));
}
BENCHMARK(BM_BesselSeries);

static void BM_BesselCompensated(benchmark::State& state) {
  const C w{18.0, 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(2, w));
}
BENCHMARK(BM_BesselCompensated);

static void BM_BesselRecurrence(benchmark::State& state) {
  const C w{38.0, 6.0};
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(2, w));
}
BENCHMARK(BM_BesselRecurrence);

static void BM_CharFnEval(benchmark::State& state) {
  const CharFn g(3, 1);
  const C w{9.5, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(g.eval(w));
}
BENCHMARK(BM_CharFnEval);

static void BM_DiskMeanPlaneWave(benchmark::State& state) {
  const Field f = Field::plane_wave(C{6.0, 1.0}, 0.7);
  const EquationParams params{2, 1, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_disk_mean(f, C{0.2, 0.4}, params));
  }
}
BENCHMARK(BM_DiskMeanPlaneWave);

static void BM_DiskMeanCylinderWave(benchmark::State& state) {
  const Field f = Field::cylinder_wave(C{-7.979287054238041, 3.4871785595819554}, 0, 1);
  const EquationParams params{1, 0, 1.0};
  const Envelope env{40.0, 12.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_disk_mean(f, C{0.5, 0.1}, params, QuadratureRule{}, env));
  }
}
BENCHMARK(BM_DiskMeanCylinderWave);

static void BM_WindingSquare(benchmark::State& state) {
  const CharFn g(1, 0);
  const auto f = [&](C w) { return g.eval(w); };
  const auto fd = [&](C w) { return g.eval_deriv(w); };
  const Rect sq{-8.4, -7.6, 3.1, 3.9};  // isolates the first zero
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(f, fd, sq));
}
BENCHMARK(BM_WindingSquare);

static void BM_ZeroScanSmall(benchmark::State& state) {
  ScanOptions opts;
  opts.lambda_max = 12.0;
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(1, 0, opts));
}
BENCHMARK(BM_ZeroScanSmall);

BENCHMARK_MAIN();
