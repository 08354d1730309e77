#include <benchmark/benchmark.h>

#include "period_lab/lattice.hpp"
#include "period_lab/period_iib.hpp"
#include "period_lab/period_iif.hpp"

using namespace period_lab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_IibJacobian(benchmark::State& state) {
  const auto inst = iib::random_instance(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iib::dominance_certificate(inst, 1e-5, 1e-6, {}, exec_of(state)));
  }
}

void BM_IifJacobian(benchmark::State& state) {
  const auto inst = iif::random_instance(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iif::dominance_certificate_iif(inst, 1e-5, 1e-6, {}, exec_of(state)));
  }
}

void BM_E8Roots(benchmark::State& state) {
  const auto e8 = lattice::standard("E8");
  for (auto _ : state) benchmark::DoNotOptimize(lattice::root_count(e8, exec_of(state)));
}

void BM_D8Roots(benchmark::State& state) {
  const auto d8 = lattice::standard("D8");
  for (auto _ : state) benchmark::DoNotOptimize(lattice::root_count(d8, exec_of(state)));
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_IibJacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IifJacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_E8Roots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_D8Roots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
