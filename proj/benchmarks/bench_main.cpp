#include <benchmark/benchmark.h>

#include <vector>

#include <spoja/cov_models.hpp>
#include <spoja/oja.hpp>
#include <spoja/rng.hpp>
#include <spoja/sampling.hpp>
#include <spoja/sparse_pca.hpp>

namespace {

void BM_OjaStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto m = spoja::make_single_spike(d, 5, 2.0);
  spoja::SampleStream stream(m, 1, 1);
  std::vector<double> x(d);
  stream.next(x);
  auto st = spoja::make_oja_state(spoja::gaussian_unit_init(d, 2), spoja::EtaSchedule::constant(1e-4));
  for (auto _ : state) {
    spoja::oja_step(st, x);
    benchmark::DoNotOptimize(st.u.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OjaStep)->Arg(100)->Arg(10000)->Arg(100000);

void BM_SampleStream(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto m = spoja::make_single_spike(d, 5, 2.0);
  std::vector<double> x(d);
  for (auto _ : state) {
    spoja::SampleStream stream(m, 3, 1000);
    for (int i = 0; i < 1000; ++i) stream.next(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleStream)->Arg(100)->Arg(1000);

void BM_PipelineTruncVec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = spoja::make_single_spike(200, 5, 3.0);
  const double eta = spoja::default_learning_rate(static_cast<double>(n), m.gap());
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spoja::SampleStream data(m, ++seed, n);
    auto res = spoja::pipeline_trunc_vec(data, 5, eta, spoja::PipelineSeeds::from_trial(seed));
    benchmark::DoNotOptimize(res.sin2);
  }
}
BENCHMARK(BM_PipelineTruncVec)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
