#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutbench/geometry.hpp"
#include "layoutbench/raster.hpp"

namespace layoutbench::metrics {

// Graphic metrics (Val, Ove, Ali, Und_l, Und_s) need only the layout.
// Content metrics need the compounded saliency map (Uti, Occ) or the canvas
// luminance (Rea). Everything except Val looks at valid elements only.
enum class Metric { Val, Ove, Ali, UndL, UndS, Uti, Occ, Rea };

inline constexpr std::size_t kMetricCount = 8;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::Val, Metric::Ove, Metric::Ali, Metric::UndL,
    Metric::UndS, Metric::Uti, Metric::Occ, Metric::Rea};

std::string_view name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);
bool needs_saliency(Metric m);
bool needs_image(Metric m);

/// One optional value per metric, indexed by Metric.
using MetricValues = std::array<std::optional<double>, kMetricCount>;

/// A subset of the eight metrics.
class MetricSet {
 public:
  static MetricSet all();
  static MetricSet none() { return MetricSet{}; }
  /// Parses a comma-separated list of metric names, or "all".
  static MetricSet parse(std::string_view list);

  void add(Metric m) { bits_[static_cast<std::size_t>(m)] = true; }
  bool has(Metric m) const { return bits_[static_cast<std::size_t>(m)]; }
  bool any_content() const;

 private:
  std::array<bool, kMetricCount> bits_{};
};

/// A value together with a flag marking a degenerate input (empty region or
/// zero denominator) for which the value falls back to 0.
struct Flagged {
  double value = 0.0;
  bool degenerate = false;
};

struct UnderlayScore {
  double loose = 0.0;
  double strict = 0.0;
  // Valid underlays that overlap no valid text or logo.
  int orphans = 0;
};

/// Ratio of valid elements to all non-pad elements; nullopt for an empty layout.
std::optional<double> metric_validity(const Layout& layout);

/// Mean pairwise IoU of valid texts and logos; nullopt with fewer than two.
std::optional<double> metric_overlay(const Layout& layout);

/// Mean over valid elements of the smallest gap to any other valid element
/// on one of six axes (left, x-center, right, top, y-center, bottom). X gaps
/// are divided by the canvas width and y gaps by the height; boxes are
/// clipped to the canvas first. Fewer than two valid elements gives 0.
double metric_alignment(const Layout& layout);

/// Loose score of an underlay: max over valid texts/logos of
/// area(u & inst) / area(inst). Strict score: 1 when some valid text/logo
/// lies inside u (closed containment), else 0. Both are averaged over the
/// valid underlays; nullopt when there is none.
std::optional<UnderlayScore> metric_underlay(const Layout& layout);

/// Sum of (1 - S) over pixels covered by valid elements, divided by the sum
/// of (1 - S) over the canvas. Flagged when the canvas is fully salient.
Flagged metric_utility(const Layout& layout, const SaliencyRaster& saliency);

/// Mean saliency over pixels covered by valid elements. Flagged when no pixel
/// is covered.
Flagged metric_occlusion(const Layout& layout, const SaliencyRaster& saliency);

/// Normalized gradient magnitude at (x, y): central differences with
/// replicated borders, sqrt(gx^2 + gy^2) / sqrt(2).
double gradient_magnitude(const LuminanceRaster& image, int x, int y);

/// Mean gradient magnitude over pixels covered by valid text elements and
/// not covered by any valid underlay. Flagged when that region is empty.
Flagged metric_readability(const Layout& layout, const LuminanceRaster& image);

struct LayoutDiagnostics {
  bool empty_layout = false;
  bool overlay_undefined = false;
  bool no_valid_underlay = false;
  int orphan_underlays = 0;
  bool missing_saliency = false;
  bool missing_image = false;
  bool utility_degenerate = false;
  bool occlusion_empty = false;
  bool readability_empty = false;
};

struct LayoutMetrics {
  std::string canvas_id;
  std::string layout_id;
  int element_count = 0;
  int valid_count = 0;
  MetricValues values{};
  LayoutDiagnostics diagnostics;
};

/// Per-layout evaluation of the selected metrics. A missing raster excludes
/// the metrics that need it. Throws InputError when a supplied raster does
/// not match the canvas size.
LayoutMetrics evaluate_layout(const Layout& layout, const SaliencyRaster* saliency,
                              const LuminanceRaster* image, const MetricSet& selection);

struct MetricSummary {
  std::optional<double> mean;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;
};

struct MetricReport {
  MetricSet selection;
  std::array<MetricSummary, kMetricCount> summaries{};
  std::size_t layouts = 0;
  // Diagnostic name -> number of layouts (or, for orphan_underlays, elements).
  std::map<std::string, std::size_t> diagnostics;

  std::optional<double> value(Metric m) const { return summaries[static_cast<std::size_t>(m)].mean; }
  MetricValues values() const;
};

/// Checks declared ranges and Und_s <= Und_l. Throws std::logic_error.
void check_report(const MetricReport& report);
void check_values(const MetricValues& values);

/// Per-metric means over non-excluded layouts. Rows are reduced in a
/// canonical order (canvas id, layout id, then values) so the result does
/// not depend on input order.
MetricReport aggregate(std::vector<LayoutMetrics> rows, const MetricSet& selection);

/// Sorts rows into the canonical reduction order.
void canonical_sort(std::vector<LayoutMetrics>& rows);

struct EvalItem {
  Layout layout;
  std::optional<SaliencyRaster> saliency;
  std::optional<LuminanceRaster> image;
};

/// Evaluates every item (optionally on `jobs` worker threads) and aggregates.
MetricReport evaluate(std::span<const EvalItem> items, const MetricSet& selection,
                      unsigned jobs = 1, std::vector<LayoutMetrics>* rows_out = nullptr);

/// Sum over all eight metrics of |b - a|. Throws InputError when either
/// side lacks a value.
double compute_ae(const MetricValues& a, const MetricValues& b);
double compute_ae(const MetricReport& a, const MetricReport& b);

}  // namespace layoutbench::metrics
