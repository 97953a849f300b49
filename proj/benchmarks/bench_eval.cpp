#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "hzeta/menchoff.hpp"
#include "hzeta/rng.hpp"
#include "hzeta/special.hpp"

namespace {

void BM_HurwitzZeta(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto r = hzeta::hurwitz_zeta(hzeta::SPoint{0.5, t}, hzeta::OmegaParam(0.3),
                                 1e-13 * (1.0 + t) * 2.0);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HurwitzZeta)->RangeMultiplier(10)->Range(100, 1'000'000)->Complexity();

void BM_FSumTruncated(benchmark::State& state) {
  const auto K = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = hzeta::f_sum_truncated(hzeta::SPoint{0.5, 50.0}, 0.3, K);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FSumTruncated)->RangeMultiplier(10)->Range(1000, 1'000'000)->Complexity();

void BM_RmBound(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const std::size_t len = std::size_t{1} << (depth + 1);
  std::vector<hzeta::cplx> values(len);
  values[0] = 0.0;
  for (std::size_t j = 1; j < len; ++j) {
    values[j] = {2.0 * hzeta::counter_uniform01(1, 0, 2 * j) - 1.0,
                 2.0 * hzeta::counter_uniform01(1, 0, 2 * j + 1) - 1.0};
  }
  const hzeta::PrefixArray a(depth, std::move(values));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hzeta::rm_bound(a));
  }
}
BENCHMARK(BM_RmBound)->DenseRange(4, 16, 4);

void BM_QlilTrajectory(benchmark::State& state) {
  hzeta::ArraySpec spec;
  spec.kernel = hzeta::Kernel::HurwitzPhase;
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = hzeta::qlil_trajectory(spec, n_max, 0.377);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QlilTrajectory)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

}  // namespace

BENCHMARK_MAIN();
