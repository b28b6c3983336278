#include <benchmark/benchmark.h>

#include <vector>

#include "dns/dataset.hpp"
#include "dns/levels.hpp"
#include "dns/models/analytic_gaussian.hpp"
#include "dns/models/straight_line.hpp"
#include "dns/sampler.hpp"

namespace {

using dns::Execution;

template <typename M>
std::vector<dns::Worker<M>> make_workers(const M& model, int count) {
  std::vector<dns::Worker<M>> workers;
  workers.reserve(static_cast<std::size_t>(count));
  for (int w = 0; w < count; ++w) workers.emplace_back(model, 5, dns::mix_seed(1, w + 1));
  return workers;
}

/// A fixed ladder of levels so every window does the same amount of work.
std::vector<dns::Level> gaussian_levels() {
  std::vector<dns::Level> levels = dns::initial_levels();
  for (int j = 1; j < 10; ++j) levels.push_back({{-60.0 + 6.0 * j, 0.5}, -1.0 * j, {}});
  return levels;
}

template <typename M>
void run_windows(benchmark::State& state, const M& model, Execution execution) {
  const int num_workers = static_cast<int>(state.range(0));
  auto workers = make_workers(model, num_workers);
  const auto levels = gaussian_levels();
  const dns::LevelView view{levels, dns::Stage::exploring, 10.0, 100.0};
  constexpr int kSteps = 1000;
  for (auto _ : state) {
    if (execution == Execution::openmp)
      dns::evolve_openmp(workers, model, view, kSteps);
    else
      dns::evolve_serial(workers, model, view, kSteps);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * num_workers * kSteps);
}

void BM_GaussianSerial(benchmark::State& state) {
  run_windows(state, dns::models::AnalyticGaussian{}, Execution::serial);
}
void BM_GaussianOpenMP(benchmark::State& state) {
  run_windows(state, dns::models::AnalyticGaussian{}, Execution::openmp);
}

const dns::models::StraightLine& straight_line() {
  static const dns::models::StraightLine model = [] {
    dns::Rng rng(3);
    return dns::models::StraightLine(std::make_shared<const dns::Dataset>(
        dns::models::StraightLine::simulate(200, {1.0, 0.0, 1.0}, rng)));
  }();
  return model;
}

void BM_StraightLineSerial(benchmark::State& state) {
  run_windows(state, straight_line(), Execution::serial);
}
void BM_StraightLineOpenMP(benchmark::State& state) {
  run_windows(state, straight_line(), Execution::openmp);
}

BENCHMARK(BM_GaussianSerial)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(BM_GaussianOpenMP)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(BM_StraightLineSerial)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(BM_StraightLineOpenMP)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
