#include "layoutbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "layoutbench/parallel.hpp"

namespace layoutbench::metrics {

namespace {

constexpr std::array<std::string_view, kMetricCount> kNames = {
    "val", "ove", "ali", "und_l", "und_s", "uti", "occ", "rea"};

std::size_t slot(Metric m) { return static_cast<std::size_t>(m); }

bool is_anchor(const Element& e) {
  return e.cls == ElementClass::Text || e.cls == ElementClass::Logo;
}

std::vector<const Element*> valid_elements(const Layout& layout, bool (*pred)(const Element&)) {
  std::vector<const Element*> out;
  for (const Element& e : layout.elements) {
    if (pred(e) && is_valid(e, layout.canvas_w, layout.canvas_h)) out.push_back(&e);
  }
  return out;
}

bool every(const Element&) { return true; }
bool underlay(const Element& e) { return e.cls == ElementClass::Underlay; }
bool text(const Element& e) { return e.cls == ElementClass::Text; }

void check_raster(const Layout& layout, const Raster& raster, std::string_view what) {
  if (raster.width() != layout.canvas_w || raster.height() != layout.canvas_h) {
    throw InputError(fmt::format("{} for '{}' is {}x{}, canvas is {}x{}", what, layout.canvas_id,
                                 raster.width(), raster.height(), layout.canvas_w,
                                 layout.canvas_h));
  }
}

}  // namespace

std::string_view name(Metric m) { return kNames[slot(m)]; }

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : kAllMetrics) {
    if (name(m) == text) return m;
  }
  return std::nullopt;
}

bool needs_saliency(Metric m) { return m == Metric::Uti || m == Metric::Occ; }
bool needs_image(Metric m) { return m == Metric::Rea; }

MetricSet MetricSet::all() {
  MetricSet s;
  s.bits_.fill(true);
  return s;
}

MetricSet MetricSet::parse(std::string_view list) {
  if (list == "all") return all();
  MetricSet s;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view item = list.substr(pos, comma - pos);
    if (item.empty()) throw InputError(fmt::format("empty metric name in '{}'", list));
    if (item == "und") {
      s.add(Metric::UndL);
      s.add(Metric::UndS);
    } else if (auto m = parse_metric(item)) {
      s.add(*m);
    } else {
      throw InputError(fmt::format("unknown metric '{}'", item));
    }
    pos = comma + 1;
  }
  return s;
}

bool MetricSet::any_content() const {
  return has(Metric::Uti) || has(Metric::Occ) || has(Metric::Rea);
}

std::optional<double> metric_validity(const Layout& layout) {
  std::size_t total = 0;
  std::size_t valid = 0;
  for (const Element& e : layout.elements) {
    if (e.cls == ElementClass::Pad) continue;
    ++total;
    if (is_valid(e, layout.canvas_w, layout.canvas_h)) ++valid;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(valid) / static_cast<double>(total);
}

std::optional<double> metric_overlay(const Layout& layout) {
  const auto items = valid_elements(layout, is_anchor);
  if (items.size() < 2) return std::nullopt;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      sum += iou(items[i]->box, items[j]->box);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

double metric_alignment(const Layout& layout) {
  const auto items = valid_elements(layout, every);
  if (items.size() < 2) return 0.0;
  const double w = layout.canvas_w;
  const double h = layout.canvas_h;
  std::vector<std::array<double, 6>> axes;
  axes.reserve(items.size());
  for (const Element* e : items) {
    const BBox b{std::clamp(e->box.x1, 0.0, w), std::clamp(e->box.y1, 0.0, h),
                 std::clamp(e->box.x2, 0.0, w), std::clamp(e->box.y2, 0.0, h)};
    axes.push_back({b.x1 / w, (b.x1 + b.x2) / 2.0 / w, b.x2 / w, b.y1 / h,
                    (b.y1 + b.y2) / 2.0 / h, b.y2 / h});
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < axes.size(); ++j) {
      if (i == j) continue;
      for (std::size_t a = 0; a < 6; ++a) {
        best = std::min(best, std::abs(axes[i][a] - axes[j][a]));
      }
    }
    sum += best;
  }
  return sum / static_cast<double>(axes.size());
}

std::optional<UnderlayScore> metric_underlay(const Layout& layout) {
  const auto underlays = valid_elements(layout, underlay);
  if (underlays.empty()) return std::nullopt;
  const auto anchors = valid_elements(layout, is_anchor);
  UnderlayScore score;
  for (const Element* u : underlays) {
    double loose = 0.0;
    bool strict = false;
    for (const Element* inst : anchors) {
      const double area = inst->box.area();
      if (area > 0.0) loose = std::max(loose, intersection_area(u->box, inst->box) / area);
      strict = strict || contains(u->box, inst->box);
    }
    if (loose == 0.0) ++score.orphans;
    score.loose += loose;
    score.strict += strict ? 1.0 : 0.0;
  }
  score.loose /= static_cast<double>(underlays.size());
  score.strict /= static_cast<double>(underlays.size());
  return score;
}

Flagged metric_utility(const Layout& layout, const SaliencyRaster& saliency) {
  check_raster(layout, saliency, "saliency map");
  const CoverageMask mask = rasterize_coverage(layout, any_class, saliency.width(), saliency.height());
  const auto values = saliency.values();
  const auto bits = mask.bits();
  double covered = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double free_space = 1.0 - values[i];
    total += free_space;
    if (bits[i]) covered += free_space;
  }
  if (total <= 0.0) return Flagged{0.0, true};
  return Flagged{covered / total, false};
}

Flagged metric_occlusion(const Layout& layout, const SaliencyRaster& saliency) {
  check_raster(layout, saliency, "saliency map");
  const CoverageMask mask = rasterize_coverage(layout, any_class, saliency.width(), saliency.height());
  const auto values = saliency.values();
  const auto bits = mask.bits();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!bits[i]) continue;
    sum += values[i];
    ++count;
  }
  if (count == 0) return Flagged{0.0, true};
  return Flagged{sum / static_cast<double>(count), false};
}

double gradient_magnitude(const LuminanceRaster& image, int x, int y) {
  const int xl = std::max(x - 1, 0);
  const int xr = std::min(x + 1, image.width() - 1);
  const int yu = std::max(y - 1, 0);
  const int yd = std::min(y + 1, image.height() - 1);
  const double gx = (image.at(xr, y) - image.at(xl, y)) / 2.0;
  const double gy = (image.at(x, yd) - image.at(x, yu)) / 2.0;
  return std::sqrt(gx * gx + gy * gy) / std::sqrt(2.0);
}

Flagged metric_readability(const Layout& layout, const LuminanceRaster& image) {
  check_raster(layout, image, "canvas image");
  const CoverageMask texts = rasterize_coverage(layout, text, image.width(), image.height());
  const CoverageMask unders = rasterize_coverage(layout, underlay, image.width(), image.height());
  const CoverageMask region = texts.minus(unders);
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!region.at(x, y)) continue;
      sum += gradient_magnitude(image, x, y);
      ++count;
    }
  }
  if (count == 0) return Flagged{0.0, true};
  return Flagged{sum / static_cast<double>(count), false};
}

LayoutMetrics evaluate_layout(const Layout& layout, const SaliencyRaster* saliency,
                              const LuminanceRaster* image, const MetricSet& selection) {
  LayoutMetrics row;
  row.canvas_id = layout.canvas_id;
  row.layout_id = layout.layout_id;
  for (const Element& e : layout.elements) {
    if (e.cls == ElementClass::Pad) continue;
    ++row.element_count;
    if (is_valid(e, layout.canvas_w, layout.canvas_h)) ++row.valid_count;
  }
  auto& v = row.values;
  auto& diag = row.diagnostics;

  if (selection.has(Metric::Val)) {
    v[slot(Metric::Val)] = metric_validity(layout);
    diag.empty_layout = !v[slot(Metric::Val)].has_value();
  }
  if (selection.has(Metric::Ove)) {
    v[slot(Metric::Ove)] = metric_overlay(layout);
    diag.overlay_undefined = !v[slot(Metric::Ove)].has_value();
  }
  if (selection.has(Metric::Ali)) v[slot(Metric::Ali)] = metric_alignment(layout);
  if (selection.has(Metric::UndL) || selection.has(Metric::UndS)) {
    const auto und = metric_underlay(layout);
    diag.no_valid_underlay = !und.has_value();
    if (und) {
      diag.orphan_underlays = und->orphans;
      if (selection.has(Metric::UndL)) v[slot(Metric::UndL)] = und->loose;
      if (selection.has(Metric::UndS)) v[slot(Metric::UndS)] = und->strict;
    }
  }
  if (selection.has(Metric::Uti) || selection.has(Metric::Occ)) {
    if (saliency == nullptr) {
      diag.missing_saliency = true;
    } else {
      if (selection.has(Metric::Uti)) {
        const Flagged uti = metric_utility(layout, *saliency);
        v[slot(Metric::Uti)] = uti.value;
        diag.utility_degenerate = uti.degenerate;
      }
      if (selection.has(Metric::Occ)) {
        const Flagged occ = metric_occlusion(layout, *saliency);
        v[slot(Metric::Occ)] = occ.value;
        diag.occlusion_empty = occ.degenerate;
      }
    }
  }
  if (selection.has(Metric::Rea)) {
    if (image == nullptr) {
      diag.missing_image = true;
    } else {
      const Flagged rea = metric_readability(layout, *image);
      v[slot(Metric::Rea)] = rea.value;
      diag.readability_empty = rea.degenerate;
    }
  }
  return row;
}

MetricValues MetricReport::values() const {
  MetricValues out{};
  for (std::size_t i = 0; i < kMetricCount; ++i) out[i] = summaries[i].mean;
  return out;
}

void check_values(const MetricValues& values) {
  for (Metric m : kAllMetrics) {
    const auto& v = values[slot(m)];
    if (v && !(*v >= 0.0 && *v <= 1.0)) {
      throw std::logic_error(fmt::format("{} = {} outside [0, 1]", name(m), *v));
    }
  }
  const auto& loose = values[slot(Metric::UndL)];
  const auto& strict = values[slot(Metric::UndS)];
  if (loose && strict && *strict > *loose) {
    throw std::logic_error(fmt::format("und_s = {} exceeds und_l = {}", *strict, *loose));
  }
}

void check_report(const MetricReport& report) { check_values(report.values()); }

void canonical_sort(std::vector<LayoutMetrics>& rows) {
  auto key = [](const LayoutMetrics& r) { return std::tie(r.canvas_id, r.layout_id); };
  std::stable_sort(rows.begin(), rows.end(), [&](const LayoutMetrics& a, const LayoutMetrics& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    // nullopt sorts before any value; -1 stands in for it.
    for (std::size_t i = 0; i < kMetricCount; ++i) {
      const double va = a.values[i].value_or(-1.0);
      const double vb = b.values[i].value_or(-1.0);
      if (va != vb) return va < vb;
    }
    return std::tie(a.element_count, a.valid_count) < std::tie(b.element_count, b.valid_count);
  });
}

MetricReport aggregate(std::vector<LayoutMetrics> rows, const MetricSet& selection) {
  canonical_sort(rows);
  MetricReport report;
  report.selection = selection;
  report.layouts = rows.size();
  std::array<double, kMetricCount> sums{};
  for (const LayoutMetrics& row : rows) {
    for (Metric m : kAllMetrics) {
      if (!selection.has(m)) continue;
      auto& summary = report.summaries[slot(m)];
      if (row.values[slot(m)]) {
        sums[slot(m)] += *row.values[slot(m)];
        ++summary.evaluated;
      } else {
        ++summary.excluded;
      }
    }
    const auto& d = row.diagnostics;
    auto bump = [&](const char* key, bool flag) {
      if (flag) ++report.diagnostics[key];
    };
    bump("empty_layout", d.empty_layout);
    bump("overlay_undefined", d.overlay_undefined);
    bump("no_valid_underlay", d.no_valid_underlay);
    bump("missing_saliency", d.missing_saliency);
    bump("missing_image", d.missing_image);
    bump("utility_degenerate", d.utility_degenerate);
    bump("occlusion_empty", d.occlusion_empty);
    bump("readability_empty", d.readability_empty);
    if (d.orphan_underlays > 0) {
      report.diagnostics["orphan_underlays"] += static_cast<std::size_t>(d.orphan_underlays);
    }
  }
  for (Metric m : kAllMetrics) {
    auto& summary = report.summaries[slot(m)];
    if (summary.evaluated > 0) {
      summary.mean = sums[slot(m)] / static_cast<double>(summary.evaluated);
    }
  }
  check_report(report);
  return report;
}

MetricReport evaluate(std::span<const EvalItem> items, const MetricSet& selection, unsigned jobs,
                      std::vector<LayoutMetrics>* rows_out) {
  std::vector<LayoutMetrics> rows(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    const EvalItem& item = items[i];
    rows[i] = evaluate_layout(item.layout, item.saliency ? &*item.saliency : nullptr,
                              item.image ? &*item.image : nullptr, selection);
  });
  if (rows_out != nullptr) *rows_out = rows;
  return aggregate(std::move(rows), selection);
}

double compute_ae(const MetricValues& a, const MetricValues& b) {
  double total = 0.0;
  for (Metric m : kAllMetrics) {
    const auto& va = a[slot(m)];
    const auto& vb = b[slot(m)];
    if (!va || !vb) {
      throw InputError(fmt::format("AE needs all eight metrics; {} is missing", name(m)));
    }
    total += std::abs(*vb - *va);
  }
  return total;
}

double compute_ae(const MetricReport& a, const MetricReport& b) {
  return compute_ae(a.values(), b.values());
}

}  // namespace layoutbench::metrics
