// OpenMP kernels against their serial references on the completed dP4 structure.
#include <benchmark/benchmark.h>

#include "mirror/presets.hpp"
#include "mirror/scattering.hpp"
#include "mirror/theta.hpp"

using namespace mirror;

namespace {

const WallStructure& structure() {
  static const WallStructure ws = [] {
    const Preset p = dp4_preset();
    return complete_to_consistency(perturb_walls(build_initial_walls(p.model), p.offsets), 20);
  }();
  return ws;
}

void BM_audit_parallel(benchmark::State& state) {
  const auto& ws = structure();
  for (auto _ : state) benchmark::DoNotOptimize(audit_consistency(ws, static_cast<int>(state.range(0))));
}

void BM_audit_serial(benchmark::State& state) {
  const auto& ws = structure();
  for (auto _ : state)
    benchmark::DoNotOptimize(audit_consistency_serial(ws, static_cast<int>(state.range(0))));
}

void BM_theta_parallel(benchmark::State& state) {
  const auto& ws = structure();
  const Point end = dp4_preset().endpoint;
  for (auto _ : state) benchmark::DoNotOptimize(compute_theta_basis(ws, end, 20));
}

void BM_theta_serial(benchmark::State& state) {
  const auto& ws = structure();
  const Point end = dp4_preset().endpoint;
  for (auto _ : state) benchmark::DoNotOptimize(compute_theta_basis_serial(ws, end, 20));
}

}  // namespace

BENCHMARK(BM_audit_parallel)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_audit_serial)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
