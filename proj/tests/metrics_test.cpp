#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "layoutbench/metrics.hpp"
#include "support/oracles.hpp"

namespace layoutbench::metrics {
namespace {

Element el(ElementClass c, BBox b, int i) { return Element{c, b, i}; }

Layout canvas100(std::vector<Element> elements, std::string id = "c") {
  return Layout{std::move(id), "", 100, 100, std::move(elements)};
}

TEST(Validity, Examples) {
  EXPECT_DOUBLE_EQ(*metric_validity(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                                               el(ElementClass::Text, {30, 30, 50, 50}, 1),
                                               el(ElementClass::Logo, {60, 60, 80, 80}, 2),
                                               el(ElementClass::Text, {200, 200, 300, 300}, 3)})),
                   0.75);
  EXPECT_DOUBLE_EQ(*metric_validity(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0)})), 1.0);
  EXPECT_DOUBLE_EQ(*metric_validity(canvas100({el(ElementClass::Text, {-50, 0, -1, 9}, 0)})), 0.0);
  EXPECT_FALSE(metric_validity(canvas100({})).has_value());
}

TEST(Validity, PadsAreNotCounted) {
  const Layout l = canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0), el(ElementClass::Pad, {}, -1)});
  EXPECT_DOUBLE_EQ(*metric_validity(l), 1.0);
}

TEST(Overlay, Examples) {
  EXPECT_DOUBLE_EQ(*metric_overlay(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                                              el(ElementClass::Text, {0, 0, 20, 20}, 1)})),
                   1.0);
  EXPECT_DOUBLE_EQ(*metric_overlay(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                                              el(ElementClass::Logo, {40, 40, 60, 60}, 1)})),
                   0.0);
  const Layout three = canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                                  el(ElementClass::Text, {10, 10, 30, 30}, 1),
                                  el(ElementClass::Text, {50, 50, 70, 70}, 2)});
  EXPECT_NEAR(*metric_overlay(three), 1.0 / 21.0, 1e-12);
  EXPECT_FALSE(metric_overlay(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0)})).has_value());
}

TEST(Overlay, UnderlaysDoNotParticipate) {
  const Layout l = canvas100({el(ElementClass::Underlay, {0, 0, 20, 20}, 0),
                              el(ElementClass::Text, {0, 0, 20, 20}, 1),
                              el(ElementClass::Text, {50, 50, 70, 70}, 2)});
  EXPECT_DOUBLE_EQ(*metric_overlay(l), 0.0);
}

TEST(Alignment, Examples) {
  EXPECT_DOUBLE_EQ(metric_alignment(canvas100({el(ElementClass::Text, {10, 0, 30, 20}, 0),
                                               el(ElementClass::Text, {10, 40, 50, 60}, 1)})),
                   0.0);
  EXPECT_DOUBLE_EQ(metric_alignment(canvas100({el(ElementClass::Text, {10, 10, 30, 30}, 0)})), 0.0);
  EXPECT_NEAR(metric_alignment(canvas100({el(ElementClass::Text, {10, 10, 30, 30}, 0),
                                          el(ElementClass::Text, {12, 50, 40, 70}, 1)})),
              0.02, 1e-12);
}

TEST(Alignment, StaysInUnitInterval) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const double a = metric_alignment(testing::random_int_layout(rng, 120, 80, 10));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Underlay, Examples) {
  const auto full = metric_underlay(canvas100({el(ElementClass::Underlay, {0, 0, 10, 10}, 0),
                                               el(ElementClass::Text, {2, 2, 8, 8}, 1)}));
  ASSERT_TRUE(full);
  EXPECT_DOUBLE_EQ(full->loose, 1.0);
  EXPECT_DOUBLE_EQ(full->strict, 1.0);

  const auto half = metric_underlay(canvas100({el(ElementClass::Underlay, {0, 0, 10, 10}, 0),
                                               el(ElementClass::Text, {5, 0, 15, 10}, 1)}));
  ASSERT_TRUE(half);
  EXPECT_DOUBLE_EQ(half->loose, 0.5);
  EXPECT_DOUBLE_EQ(half->strict, 0.0);

  EXPECT_FALSE(metric_underlay(canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0)})).has_value());
}

TEST(Underlay, ContainmentIsClosedAndOrphansCounted) {
  const auto s = metric_underlay(canvas100({el(ElementClass::Underlay, {0, 0, 10, 10}, 0),
                                            el(ElementClass::Text, {0, 0, 10, 10}, 1),
                                            el(ElementClass::Underlay, {60, 60, 90, 90}, 2)}));
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->loose, 0.5);
  EXPECT_DOUBLE_EQ(s->strict, 0.5);
  EXPECT_EQ(s->orphans, 1);
}

TEST(Underlay, StrictNeverExceedsLoose) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto s = metric_underlay(testing::random_int_layout(rng, 100, 100, 12));
    if (!s) continue;
    EXPECT_LE(s->strict, s->loose + 1e-15);
    EXPECT_GE(s->strict, 0.0);
    EXPECT_LE(s->loose, 1.0);
  }
}

TEST(Utility, Examples) {
  const Layout quarter = canvas100({el(ElementClass::Text, {0, 0, 50, 50}, 0)});
  auto u = metric_utility(quarter, Raster(100, 100, 0.0));
  EXPECT_DOUBLE_EQ(u.value, 0.25);
  EXPECT_FALSE(u.degenerate);
  EXPECT_DOUBLE_EQ(metric_utility(canvas100({}), Raster(100, 100, 0.0)).value, 0.0);
  u = metric_utility(quarter, Raster(100, 100, 1.0));
  EXPECT_DOUBLE_EQ(u.value, 0.0);
  EXPECT_TRUE(u.degenerate);
  EXPECT_THROW(metric_utility(quarter, Raster(50, 50, 0.0)), InputError);
}

TEST(Occlusion, Examples) {
  const Layout quarter = canvas100({el(ElementClass::Text, {0, 0, 50, 50}, 0)});
  EXPECT_DOUBLE_EQ(metric_occlusion(quarter, Raster(100, 100, 0.5)).value, 0.5);
  EXPECT_DOUBLE_EQ(metric_occlusion(quarter, Raster(100, 100, 0.0)).value, 0.0);
  const auto empty = metric_occlusion(canvas100({}), Raster(100, 100, 0.5));
  EXPECT_DOUBLE_EQ(empty.value, 0.0);
  EXPECT_TRUE(empty.degenerate);
}

TEST(ContentMetrics, MatchBruteForceOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    const Layout l = testing::random_int_layout(rng, 48, 36, 8);
    const Raster s = testing::random_raster(rng, 48, 36);
    EXPECT_NEAR(metric_utility(l, s).value, testing::oracle_utility(l, s), 1e-9);
    EXPECT_NEAR(metric_occlusion(l, s).value, testing::oracle_occlusion(l, s), 1e-9);
    EXPECT_NEAR(metric_readability(l, s).value, testing::oracle_readability(l, s), 1e-9);
  }
}

TEST(Readability, ConstantCanvasIsZero) {
  const Layout l = canvas100({el(ElementClass::Text, {10, 10, 60, 40}, 0)});
  EXPECT_DOUBLE_EQ(metric_readability(l, Raster(100, 100, 0.3)).value, 0.0);
}

TEST(Readability, TextUnderUnderlayIsEmptyRegion) {
  const Layout l = canvas100({el(ElementClass::Text, {10, 10, 40, 40}, 0),
                              el(ElementClass::Underlay, {0, 0, 50, 50}, 1)});
  const auto r = metric_readability(l, Raster(100, 100, 0.3));
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_TRUE(r.degenerate);
}

TEST(Readability, HalfBlackHalfWhite) {
  std::vector<double> v(20 * 20);
  for (int y = 0; y < 20; ++y) {
    for (int x = 10; x < 20; ++x) v[y * 20 + x] = 1.0;
  }
  const Raster img(20, 20, std::move(v));
  const Layout l{"h", "", 20, 20, {el(ElementClass::Text, {5, 5, 15, 15}, 0)}};
  const double want = testing::oracle_readability(l, img);
  EXPECT_GT(want, 0.0);
  EXPECT_NEAR(metric_readability(l, img).value, want, 1e-12);
  // Two columns of ten pixels sit on the edge, each with gx = 1/2.
  EXPECT_NEAR(want, (20 * 0.5 / std::sqrt(2.0)) / 100.0, 1e-12);
}

TEST(GradientMagnitude, BordersReplicate) {
  const Raster img(3, 1, std::vector<double>{0.0, 0.5, 1.0});
  EXPECT_NEAR(gradient_magnitude(img, 0, 0), 0.25 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(gradient_magnitude(img, 1, 0), 0.5 / std::sqrt(2.0), 1e-15);
}

TEST(EvaluateLayout, MissingRastersExcludeContentMetrics) {
  const Layout l = canvas100({el(ElementClass::Text, {0, 0, 50, 50}, 0)});
  const auto m = evaluate_layout(l, nullptr, nullptr, MetricSet::all());
  EXPECT_TRUE(m.values[static_cast<int>(Metric::Val)].has_value());
  EXPECT_FALSE(m.values[static_cast<int>(Metric::Uti)].has_value());
  EXPECT_FALSE(m.values[static_cast<int>(Metric::Rea)].has_value());
  EXPECT_TRUE(m.diagnostics.missing_saliency);
  EXPECT_TRUE(m.diagnostics.missing_image);
  const Raster wrong(10, 10, 0.0);
  EXPECT_THROW(evaluate_layout(l, &wrong, nullptr, MetricSet::all()), InputError);
}

TEST(Evaluate, MeansAndExclusions) {
  std::vector<EvalItem> items;
  items.push_back({canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0)}, "a"), Raster(100, 100, 0.0),
                   std::nullopt});
  items.push_back({canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                              el(ElementClass::Text, {300, 0, 320, 20}, 1)},
                             "b"),
                   std::nullopt, std::nullopt});
  const auto report = evaluate(items, MetricSet::all());
  EXPECT_EQ(report.layouts, 2u);
  EXPECT_DOUBLE_EQ(*report.value(Metric::Val), 0.75);
  const auto& uti = report.summaries[static_cast<int>(Metric::Uti)];
  EXPECT_EQ(uti.evaluated, 1u);
  EXPECT_EQ(uti.excluded, 1u);
  EXPECT_DOUBLE_EQ(*uti.mean, 0.04);
  EXPECT_FALSE(report.value(Metric::Rea).has_value());
  EXPECT_EQ(report.diagnostics.at("missing_saliency"), 1u);
}

TEST(Evaluate, SingleLayoutEqualsItsValues) {
  const EvalItem item{canvas100({el(ElementClass::Text, {0, 0, 20, 20}, 0),
                                 el(ElementClass::Text, {10, 10, 30, 30}, 1)}),
                      Raster(100, 100, 0.25), Raster(100, 100, 0.5)};
  std::vector<LayoutMetrics> rows;
  const auto report = evaluate(std::span(&item, 1), MetricSet::all(), 1, &rows);
  ASSERT_EQ(rows.size(), 1u);
  for (Metric m : kAllMetrics) EXPECT_EQ(report.value(m), rows[0].values[static_cast<int>(m)]) << name(m);
}

TEST(Evaluate, OrderAndThreadIndependent) {
  std::mt19937_64 rng(4);
  std::vector<EvalItem> items;
  for (int i = 0; i < 40; ++i) {
    Layout l = testing::random_int_layout(rng, 32, 24, 10);
    l.canvas_id = std::to_string(i % 7);
    l.layout_id = std::to_string(i);
    items.push_back({l, testing::random_raster(rng, 32, 24), testing::random_raster(rng, 32, 24)});
  }
  const auto base = evaluate(items, MetricSet::all(), 1);
  std::shuffle(items.begin(), items.end(), rng);
  const auto shuffled = evaluate(items, MetricSet::all(), 4);
  for (Metric m : kAllMetrics) EXPECT_EQ(base.value(m), shuffled.value(m)) << name(m);
  EXPECT_EQ(base.diagnostics, shuffled.diagnostics);
}

TEST(Evaluate, InvalidElementsOnlyLowerValidity) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    Layout l = testing::random_int_layout(rng, 40, 40, 8);
    if (l.elements.empty()) continue;
    const Raster s = testing::random_raster(rng, 40, 40);
    const Raster img = testing::random_raster(rng, 40, 40);
    const auto before = evaluate_layout(l, &s, &img, MetricSet::all());
    Layout more = l;
    const int n = static_cast<int>(more.elements.size());
    more.elements.push_back(el(ElementClass::Text, {100, 100, 140, 140}, n));
    more.elements.push_back(el(ElementClass::Underlay, {-30, -30, -1, -1}, n + 1));
    const auto after = evaluate_layout(more, &s, &img, MetricSet::all());
    for (Metric m : kAllMetrics) {
      if (m == Metric::Val) continue;
      EXPECT_EQ(before.values[static_cast<int>(m)], after.values[static_cast<int>(m)]) << name(m);
    }
    if (*before.values[0] > 0.0) EXPECT_LT(*after.values[0], *before.values[0]);
    EXPECT_LE(*after.values[0], *before.values[0]);
  }
}

TEST(MetricSet, Parse) {
  const auto s = MetricSet::parse("val,und");
  EXPECT_TRUE(s.has(Metric::Val));
  EXPECT_TRUE(s.has(Metric::UndL));
  EXPECT_TRUE(s.has(Metric::UndS));
  EXPECT_FALSE(s.has(Metric::Ove));
  EXPECT_FALSE(s.any_content());
  EXPECT_TRUE(MetricSet::parse("rea").any_content());
  EXPECT_THROW(MetricSet::parse("val,bogus"), InputError);
}

TEST(CheckReport, EnforcesUnderlayOrdering) {
  MetricValues v{};
  v[static_cast<int>(Metric::UndL)] = 0.8315;
  v[static_cast<int>(Metric::UndS)] = 0.4320;
  EXPECT_NO_THROW(check_values(v));
  v[static_cast<int>(Metric::UndS)] = 0.9;
  EXPECT_THROW(check_values(v), std::logic_error);
  v[static_cast<int>(Metric::UndS)] = std::nullopt;
  v[static_cast<int>(Metric::Ove)] = 1.2;
  EXPECT_THROW(check_values(v), std::logic_error);
}

MetricValues row(std::initializer_list<double> xs) {
  MetricValues v{};
  std::size_t i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

TEST(ComputeAe, PublishedAblationRows) {
  // Per metric (val, ove, ali, und_l, und_s, uti, occ, rea): fitted-length
  // values and the full-length values they differ from.
  const auto random_b = row({1.0000, 0.0881, 0.0062, 0.7417, 0.3243, 0.2240, 0.2475, 0.1909});
  const auto random_a = row({1.0000 - 0.1454, 0.0881 - 0.0666, 0.0062 - 0.0007, 0.7417 + 0.1380,
                             0.3243 + 0.1499, 0.2240 + 0.0328, 0.2475 - 0.0361, 0.1909 - 0.0035});
  EXPECT_NEAR(compute_ae(random_a, random_b), 0.5730, 5e-4);
  EXPECT_NEAR(compute_ae(random_b, random_a), 0.5730, 5e-4);
  EXPECT_DOUBLE_EQ(compute_ae(random_b, random_b), 0.0);
}

TEST(ComputeAe, MissingMetricRejected) {
  auto a = row({0, 0, 0, 0, 0, 0, 0, 0});
  auto b = a;
  b[7] = std::nullopt;
  EXPECT_THROW(compute_ae(a, b), InputError);
}

}  // namespace
}  // namespace layoutbench::metrics
