#include <benchmark/benchmark.h>

#include "rfuq/forest.hpp"
#include "rfuq/intervals.hpp"
#include "rfuq/proximity.hpp"
#include "rfuq/synthetic.hpp"

namespace {

using namespace rfuq;

Dataset bench_data(std::size_t n) { return make_heteroscedastic(n, 1).data; }

Forest bench_forest(const Dataset& d, std::size_t trees, std::size_t threads = 1) {
  ForestConfig c;
  c.n_trees = trees;
  c.seed = 42;
  c.thread_count = threads;
  return train_forest(d, c);
}

void BM_TrainForest(benchmark::State& state) {
  Dataset d = bench_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Forest f = bench_forest(d, static_cast<std::size_t>(state.range(1)));
    benchmark::DoNotOptimize(f.trees().size());
  }
}
BENCHMARK(BM_TrainForest)->Args({500, 100})->Args({2000, 100})->Args({2000, 500})
    ->Unit(benchmark::kMillisecond);

void BM_TrainForestThreaded(benchmark::State& state) {
  Dataset d = bench_data(2000);
  for (auto _ : state) {
    Forest f = bench_forest(d, 200, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(f.trees().size());
  }
}
BENCHMARK(BM_TrainForestThreaded)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RfGapTrain(benchmark::State& state) {
  Dataset d = bench_data(static_cast<std::size_t>(state.range(0)));
  Forest f = bench_forest(d, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    ProximityMatrix w = rf_gap_train(f, d);
    benchmark::DoNotOptimize(w.rows.size());
  }
}
BENCHMARK(BM_RfGapTrain)->Args({500, 100})->Args({2000, 100})->Unit(benchmark::kMillisecond);

void BM_FireIntervals(benchmark::State& state) {
  Dataset d = bench_data(1000);
  Forest f = bench_forest(d, 200);
  Matrix test(200, 1);
  for (std::size_t i = 0; i < 200; ++i) test(i, 0) = 10.0 * static_cast<double>(i) / 200.0;
  ProximityMatrix w = rf_gap_test(f, d, test);
  ResidualSet res = oob_residuals(f, d);
  const std::size_t k_min = default_k_min(0.1);
  for (auto _ : state) {
    double total = 0.0;
    for (std::size_t i = 0; i < test.rows(); ++i) {
      auto neighbors = select_neighbors(w.rows[i], res, std::nullopt, k_min);
      PredictionInterval iv =
          fire_interval(predict(f, test.row(i)), local_distribution(neighbors, res), 0.1);
      total += iv.width();
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_FireIntervals)->Unit(benchmark::kMillisecond);

void BM_QrfQuantile(benchmark::State& state) {
  Dataset d = bench_data(1000);
  Forest f = bench_forest(d, 200);
  std::vector<double> x = {5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrf_quantile(f, d, x, 0.95));
  }
}
BENCHMARK(BM_QrfQuantile)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
