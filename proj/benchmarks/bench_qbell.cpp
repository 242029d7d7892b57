#include <benchmark/benchmark.h>

#include "qbell/qbell.hpp"

namespace {

using namespace qbell;

void BM_EvaluateI(benchmark::State& state) {
  std::size_t const d = static_cast<std::size_t>(state.range(0));
  PureState const psi = bell_state(d);
  MeasurementSettings const s = optimal_settings(d);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_I(psi, s).value);
}
BENCHMARK(BM_EvaluateI)->Arg(2)->Arg(5)->Arg(11)->Arg(21);

void BM_EvaluateId(benchmark::State& state) {
  std::size_t const d = static_cast<std::size_t>(state.range(0));
  PureState const psi = bell_state(d);
  MeasurementSettings const s = optimal_settings(d);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_Id(psi, s).value);
}
BENCHMARK(BM_EvaluateId)->Arg(2)->Arg(5)->Arg(11)->Arg(21);

void BM_ExpmHermitian(benchmark::State& state) {
  std::size_t const n = static_cast<std::size_t>(state.range(0));
  RandomStream rng = derive_stream(1, 0);
  HermitianMatrix const h = random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm_i_hermitian(h, 0.3));
}
BENCHMARK(BM_ExpmHermitian)->Arg(3)->Arg(9)->Arg(25)->Arg(81);

void BM_PerturbedSample(benchmark::State& state) {
  std::size_t const d = static_cast<std::size_t>(state.range(0));
  auto const kind = state.range(1) == 0 ? PerturbationKind::Bilocal : PerturbationKind::Global;
  PureState const psi = bell_state(d);
  MeasurementSettings const s = optimal_settings(d);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream rng = derive_stream(7, i++);
    PerturbationDraw const draw(kind, d, rng);
    benchmark::DoNotOptimize(evaluate_I(draw.apply(psi, 0.2), s).value);
  }
}
BENCHMARK(BM_PerturbedSample)->ArgsProduct({{3, 5, 9}, {0, 1}});

void BM_HaarUnitary(benchmark::State& state) {
  std::size_t const n = static_cast<std::size_t>(state.range(0));
  RandomStream rng = derive_stream(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(3)->Arg(11);

}  // namespace
BENCHMARK_MAIN();
