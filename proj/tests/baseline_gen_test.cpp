#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "layoutbench/baseline_gen.hpp"
#include "layoutbench/metrics.hpp"

namespace layoutbench::gen {
namespace {

TEST(RandomLayout, AlwaysValidAndInsideCanvas) {
  GenSpec spec;
  spec.underlays = {0, 2};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    spec.seed = seed;
    const Layout l = random_layout(spec);
    ASSERT_NO_THROW(check_layout(l));
    if (!l.elements.empty()) {
      EXPECT_DOUBLE_EQ(*metrics::metric_validity(l), 1.0);
    }
    for (const Element& e : l.elements) {
      EXPECT_GE(e.box.x1, 0.0);
      EXPECT_GE(e.box.y1, 0.0);
      EXPECT_LE(e.box.x2, spec.canvas_w);
      EXPECT_LE(e.box.y2, spec.canvas_h);
    }
  }
}

TEST(RandomLayout, NoUnderlaysUnlessRequested) {
  GenSpec spec;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    spec.seed = seed;
    for (const Element& e : random_layout(spec).elements) EXPECT_NE(e.cls, ElementClass::Underlay);
  }
}

TEST(RandomLayout, UnderlaysEncloseAText) {
  GenSpec spec;
  spec.underlays = {1, 2};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    spec.seed = seed;
    const Layout l = random_layout(spec);
    for (const Element& u : l.elements) {
      if (u.cls != ElementClass::Underlay) continue;
      const bool encloses = std::any_of(l.elements.begin(), l.elements.end(), [&](const Element& t) {
        return t.cls == ElementClass::Text && contains(u.box, t.box);
      });
      EXPECT_TRUE(encloses) << "seed " << seed;
    }
  }
}

TEST(RandomLayout, DeterministicAndExactCounts) {
  GenSpec spec;
  spec.seed = 77;
  spec.texts = {3, 3};
  spec.logos = {1, 1};
  EXPECT_EQ(random_layout(spec), random_layout(spec));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    spec.seed = seed;
    EXPECT_EQ(random_layout(spec).elements.size(), 4u);
  }
}

TEST(CheckSpec, RejectsInfeasibleSpecs) {
  GenSpec spec;
  spec.width = {0.5, 1.5};
  EXPECT_THROW(check_spec(spec), InputError);
  spec = {};
  spec.texts = {3, 1};
  EXPECT_THROW(check_spec(spec), InputError);
  spec = {};
  spec.width = {0.01, 0.02};
  spec.height = {0.01, 0.02};
  EXPECT_THROW(check_spec(spec), InputError);
  spec = {};
  spec.texts = {0, 2};
  spec.underlays = {1, 1};
  EXPECT_THROW(check_spec(spec), InputError);
  EXPECT_NO_THROW(check_spec(GenSpec{}));
}

GenSpec grid_spec(int anchors) {
  GenSpec spec;
  spec.canvas_w = 90;
  spec.canvas_h = 60;
  spec.grid_rows = 3;
  spec.grid_cols = 3;
  spec.logos = {0, 0};
  spec.texts = {anchors, anchors};
  return spec;
}

TEST(SaliencyGrid, UniformMapFillsRowMajor) {
  const GenSpec spec = grid_spec(4);
  const Layout l = saliency_grid_layout(Raster(90, 60, 0.0), spec);
  ASSERT_EQ(l.elements.size(), 4u);
  EXPECT_EQ(l.elements[0].box, grid_cell(spec, 0, 0));
  EXPECT_EQ(l.elements[1].box, grid_cell(spec, 0, 1));
  EXPECT_EQ(l.elements[2].box, grid_cell(spec, 0, 2));
  EXPECT_EQ(l.elements[3].box, grid_cell(spec, 1, 0));
}

TEST(SaliencyGrid, SingleQuietCellWins) {
  const GenSpec spec = grid_spec(1);
  Raster s(90, 60, 0.8);
  for (int y = 40; y < 60; ++y) {
    for (int x = 30; x < 60; ++x) s.set(x, y, 0.0);
  }
  const Layout l = saliency_grid_layout(s, spec);
  ASSERT_EQ(l.elements.size(), 1u);
  EXPECT_EQ(l.elements[0].box, grid_cell(spec, 2, 1));
  EXPECT_EQ(l.elements[0].box, (BBox{30, 40, 60, 60}));
}

TEST(SaliencyGrid, CapacityAndSizeErrors) {
  EXPECT_THROW(saliency_grid_layout(Raster(90, 60, 0.0), grid_spec(10)), InputError);
  EXPECT_THROW(saliency_grid_layout(Raster(80, 60, 0.0), grid_spec(1)), InputError);
}

TEST(SaliencyGrid, BeatsRandomCellsOnOcclusion) {
  // A salient blob in the middle; greedy placement should avoid it.
  GenSpec spec;
  spec.canvas_w = 64;
  spec.canvas_h = 64;
  spec.texts = {1, 5};
  spec.logos = {0, 1};
  Raster s(64, 64, 0.0);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double dx = (x - 30) / 20.0;
      const double dy = (y - 26) / 16.0;
      s.set(x, y, std::exp(-(dx * dx + dy * dy)));
    }
  }
  double greedy = 0.0;
  double random = 0.0;
  const int seeds = 120;
  for (int seed = 0; seed < seeds; ++seed) {
    spec.seed = static_cast<std::uint64_t>(seed);
    const Layout l = saliency_grid_layout(s, spec);
    greedy += metrics::metric_occlusion(l, s).value;

    // Same element multiset, each element moved to a random free cell.
    std::mt19937_64 rng(1000 + seed);
    std::vector<int> cells(spec.grid_rows * spec.grid_cols);
    std::iota(cells.begin(), cells.end(), 0);
    std::shuffle(cells.begin(), cells.end(), rng);
    Layout moved = l;
    for (std::size_t i = 0; i < moved.elements.size(); ++i) {
      const int cell = cells[i];
      moved.elements[i].box = grid_cell(spec, cell / spec.grid_cols, cell % spec.grid_cols);
    }
    random += metrics::metric_occlusion(moved, s).value;
  }
  EXPECT_LE(greedy / seeds, random / seeds);
}

TEST(SaliencyGrid, PureFunctionOfInputs) {
  GenSpec spec = grid_spec(3);
  spec.underlays = {0, 2};
  spec.seed = 5;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0, 1);
  std::vector<double> v(90 * 60);
  for (auto& x : v) x = d(rng);
  const Raster s(90, 60, v);
  EXPECT_EQ(saliency_grid_layout(s, spec), saliency_grid_layout(s, spec));
}

}  // namespace
}  // namespace layoutbench::gen
