#include <benchmark/benchmark.h>

#include <memory>

#include "spectral_rec/free_energy.hpp"
#include "spectral_rec/recursion.hpp"

namespace {

using namespace spectral_rec;

RationalFunction z() { return RationalFunction::variable(); }
RationalFunction k(long n) { return RationalFunction(make_rational(n, 1)); }

std::shared_ptr<const SpectralCurve> airy(Mode mode) {
  return std::make_shared<const SpectralCurve>(build_curve(z() * z(), z(), mode, 24));
}

std::shared_ptr<const SpectralCurve> curve_b() {
  return std::make_shared<const SpectralCurve>(build_curve(k(1) / (k(1) - z() * z()), z() / (k(1) - z() * z()),
                                                           Mode::kExact));
}

void BM_AiryTable(benchmark::State& state) {
  const auto curve = airy(Mode::kExact);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(curve, level, 1));
}
BENCHMARK(BM_AiryTable)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_AiryTableSeries(benchmark::State& state) {
  const auto curve = airy(Mode::kSeries);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(curve, level, 1));
}
BENCHMARK(BM_AiryTableSeries)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CurveBTable(benchmark::State& state) {
  const auto curve = curve_b();
  const int level = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(curve, level, threads));
}
BENCHMARK(BM_CurveBTable)->ArgsProduct({{2, 3, 4}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_IntegrateTable(benchmark::State& state) {
  const CorrelatorTable w = compute_table(curve_b(), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_table(w));
}
BENCHMARK(BM_IntegrateTable)->Unit(benchmark::kMillisecond);

}  // namespace
