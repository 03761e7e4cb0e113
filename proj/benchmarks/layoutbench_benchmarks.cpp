#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "layoutbench/baseline_gen.hpp"
#include "layoutbench/dsf.hpp"
#include "layoutbench/metrics.hpp"
#include "layoutbench/raster.hpp"

namespace {

using namespace layoutbench;

std::vector<Layout> generated_layouts(int n, int underlays) {
  gen::GenSpec spec;
  spec.texts = {2, 8};
  spec.logos = {0, 2};
  spec.underlays = {0, underlays};
  std::vector<Layout> out;
  for (int i = 0; i < n; ++i) {
    spec.seed = static_cast<std::uint64_t>(i);
    out.push_back(gen::random_layout(spec));
  }
  return out;
}

Raster noise(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) x = d(rng);
  return Raster(w, h, std::move(v));
}

void BM_FormDesignSequence(benchmark::State& state) {
  const auto layouts = generated_layouts(256, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const Layout& l : layouts) benchmark::DoNotOptimize(dsf::form_design_sequence(l));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(layouts.size()));
}
BENCHMARK(BM_FormDesignSequence)->Arg(0)->Arg(4);

void BM_GraphicMetrics(benchmark::State& state) {
  const auto layouts = generated_layouts(256, 3);
  for (auto _ : state) {
    for (const Layout& l : layouts) {
      benchmark::DoNotOptimize(metrics::metric_overlay(l));
      benchmark::DoNotOptimize(metrics::metric_alignment(l));
      benchmark::DoNotOptimize(metrics::metric_underlay(l));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(layouts.size()));
}
BENCHMARK(BM_GraphicMetrics);

void BM_RasterizeCoverage(benchmark::State& state) {
  const auto layouts = generated_layouts(32, 3);
  for (auto _ : state) {
    for (const Layout& l : layouts) {
      benchmark::DoNotOptimize(rasterize_coverage(l, any_class, l.canvas_w, l.canvas_h));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(layouts.size()));
}
BENCHMARK(BM_RasterizeCoverage);

void BM_EvaluateLayout(benchmark::State& state) {
  const auto layouts = generated_layouts(16, 3);
  const Raster saliency = noise(513, 750, 1);
  const Raster image = noise(513, 750, 2);
  for (auto _ : state) {
    for (const Layout& l : layouts) {
      benchmark::DoNotOptimize(metrics::evaluate_layout(l, &saliency, &image, metrics::MetricSet::all()));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(layouts.size()));
}
BENCHMARK(BM_EvaluateLayout);

void BM_EvaluateParallel(benchmark::State& state) {
  const Raster saliency = noise(513, 750, 1);
  const Raster image = noise(513, 750, 2);
  std::vector<metrics::EvalItem> items;
  for (const Layout& l : generated_layouts(32, 3)) items.push_back({l, saliency, image});
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::evaluate(items, metrics::MetricSet::all(), static_cast<unsigned>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(items.size()));
}
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
