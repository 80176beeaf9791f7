// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "gradflow/flow.hpp"

namespace {

using namespace gradflow;

Execution exec_of(const benchmark::State& st) {
  return st.range(1) ? Execution::OpenMP : Execution::Serial;
}

FlowState sample_state(const GridPtr& g) {
  FlowState s;
  s.h = ScalarField::sample(g, [](double x, double y) { return std::sin(2 * x) * std::sin(2 * y); });
  s.psi = ScalarField::sample(g, [](double x, double y) {
    return 0.25 + 0.05 * std::cos(x) * std::cos(3 * y);
  });
  return s;
}

void BM_GeometryCache(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto g = Grid::make(n, n, 2 * M_PI, 2 * M_PI);
  const Spectral sp(g, exec_of(st));
  const auto s = sample_state(g);
  for (auto _ : st) benchmark::DoNotOptimize(build_cache(sp, s.h));
  st.SetLabel(st.range(1) ? "openmp" : "serial");
}

void BM_Step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto g = Grid::make(n, n, 2 * M_PI, 2 * M_PI);
  const Spectral sp(g, exec_of(st));
  const auto energy = EnergyModel::flory_huggins(1.0, 0.75, 0.0);
  const Mobilities mob{5.0, 1.0};
  const StepperConfig stepper{1e-5, Scheme::IMEX1, std::nullopt, std::nullopt};
  const auto s = sample_state(g);
  for (auto _ : st)
    benchmark::DoNotOptimize(step(sp, s, ModelVariant::FullCoupled, energy, mob, stepper));
  st.SetLabel(st.range(1) ? "openmp" : "serial");
}

void BM_Reduction(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto g = Grid::make(n, n, 2 * M_PI, 2 * M_PI);
  const auto f = sample_state(g).psi;
  for (auto _ : st) benchmark::DoNotOptimize(sum(exec_of(st), f.values()));
  st.SetLabel(st.range(1) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_GeometryCache)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Step)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reduction)->ArgsProduct({{128, 512}, {0, 1}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
