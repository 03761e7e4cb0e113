#include "layoutbench/baseline_gen.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "layoutbench/random.hpp"

namespace layoutbench::gen {

namespace {

void check_count(const CountRange& r, const char* what) {
  if (r.min < 0 || r.max < r.min) {
    throw InputError(fmt::format("{} count range [{}, {}] is empty or negative", what, r.min, r.max));
  }
}

void check_fraction(const FractionRange& r, const char* what, bool allow_zero = false) {
  const bool lo_ok = allow_zero ? r.min >= 0.0 : r.min > 0.0;
  if (!lo_ok || r.max < r.min || r.max > 1.0) {
    throw InputError(fmt::format("{} fraction range [{}, {}] must lie in (0, 1]", what, r.min, r.max));
  }
}

int draw_count(std::mt19937_64& rng, const CountRange& r) {
  return static_cast<int>(uniform_int(rng, r.min, r.max));
}

// Underlay around `text`, grown by a random margin and clamped to the canvas.
BBox underlay_around(std::mt19937_64& rng, const GenSpec& spec, const BBox& text) {
  const double mx = uniform_real(rng, spec.underlay_margin.min, spec.underlay_margin.max) * spec.canvas_w;
  const double my = uniform_real(rng, spec.underlay_margin.min, spec.underlay_margin.max) * spec.canvas_h;
  return BBox{std::max(0.0, text.x1 - mx), std::max(0.0, text.y1 - my),
              std::min<double>(spec.canvas_w, text.x2 + mx), std::min<double>(spec.canvas_h, text.y2 + my)};
}

}  // namespace

void check_spec(const GenSpec& spec) {
  if (spec.canvas_w <= 0 || spec.canvas_h <= 0) {
    throw InputError(fmt::format("canvas {}x{} must be positive", spec.canvas_w, spec.canvas_h));
  }
  check_count(spec.texts, "text");
  check_count(spec.logos, "logo");
  check_count(spec.underlays, "underlay");
  check_fraction(spec.width, "width");
  check_fraction(spec.height, "height");
  check_fraction(spec.underlay_margin, "underlay margin", true);
  if (spec.width.min * spec.height.min <= kValidAreaFraction) {
    throw InputError(fmt::format("smallest box ({} x {} of the canvas) would not be a valid element",
                                 spec.width.min, spec.height.min));
  }
  if (spec.underlays.max > 0 && spec.texts.min < 1) {
    throw InputError("underlays need at least one text to decorate (texts.min >= 1)");
  }
  if (spec.grid_rows <= 0 || spec.grid_cols <= 0) {
    throw InputError("grid dimensions must be positive");
  }
}

GenSpec load_gen_spec(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open generator spec '{}'", path.string()));
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError(fmt::format("generator spec '{}' is not a JSON object", path.string()));
  }
  GenSpec spec;
  try {
    auto count = [&](const char* key, CountRange& r) {
      if (!j.contains(key)) return;
      const auto v = j.at(key).get<std::vector<int>>();
      if (v.size() != 2) throw InputError(fmt::format("'{}' must be [min, max]", key));
      r = {v[0], v[1]};
    };
    auto fraction = [&](const char* key, FractionRange& r) {
      if (!j.contains(key)) return;
      const auto v = j.at(key).get<std::vector<double>>();
      if (v.size() != 2) throw InputError(fmt::format("'{}' must be [min, max]", key));
      r = {v[0], v[1]};
    };
    spec.canvas_w = j.value("canvas_w", spec.canvas_w);
    spec.canvas_h = j.value("canvas_h", spec.canvas_h);
    count("texts", spec.texts);
    count("logos", spec.logos);
    count("underlays", spec.underlays);
    fraction("width", spec.width);
    fraction("height", spec.height);
    fraction("underlay_margin", spec.underlay_margin);
    spec.grid_rows = j.value("grid_rows", spec.grid_rows);
    spec.grid_cols = j.value("grid_cols", spec.grid_cols);
    spec.seed = j.value("seed", spec.seed);
  } catch (const json::exception& e) {
    throw InputError(fmt::format("generator spec '{}': {}", path.string(), e.what()));
  }
  check_spec(spec);
  return spec;
}

Layout random_layout(const GenSpec& spec, const std::string& canvas_id) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  Layout layout;
  layout.canvas_id = canvas_id;
  layout.canvas_w = spec.canvas_w;
  layout.canvas_h = spec.canvas_h;

  const int n_logos = draw_count(rng, spec.logos);
  const int n_texts = draw_count(rng, spec.texts);
  const int n_underlays = n_texts > 0 ? draw_count(rng, spec.underlays) : 0;

  auto add = [&](ElementClass cls, const BBox& box) {
    layout.elements.push_back(Element{cls, box, static_cast<int>(layout.elements.size())});
  };
  auto random_box = [&] {
    const double w = uniform_real(rng, spec.width.min, spec.width.max) * spec.canvas_w;
    const double h = uniform_real(rng, spec.height.min, spec.height.max) * spec.canvas_h;
    const double x = uniform_real(rng, 0.0, spec.canvas_w - w);
    const double y = uniform_real(rng, 0.0, spec.canvas_h - h);
    return BBox{x, y, std::min<double>(spec.canvas_w, x + w), std::min<double>(spec.canvas_h, y + h)};
  };

  for (int i = 0; i < n_logos; ++i) add(ElementClass::Logo, random_box());
  const int first_text = static_cast<int>(layout.elements.size());
  for (int i = 0; i < n_texts; ++i) add(ElementClass::Text, random_box());
  for (int i = 0; i < n_underlays; ++i) {
    const auto pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_texts)));
    add(ElementClass::Underlay, underlay_around(rng, spec, layout.elements[first_text + pick].box));
  }
  return layout;
}

BBox grid_cell(const GenSpec& spec, int row, int col) {
  const double cw = static_cast<double>(spec.canvas_w) / spec.grid_cols;
  const double ch = static_cast<double>(spec.canvas_h) / spec.grid_rows;
  return BBox{col * cw, row * ch, (col + 1) * cw, (row + 1) * ch};
}

Layout saliency_grid_layout(const SaliencyRaster& saliency, const GenSpec& spec, const std::string& canvas_id) {
  check_spec(spec);
  if (saliency.width() != spec.canvas_w || saliency.height() != spec.canvas_h) {
    throw InputError(fmt::format("saliency map is {}x{}, canvas is {}x{}", saliency.width(),
                                 saliency.height(), spec.canvas_w, spec.canvas_h));
  }
  std::mt19937_64 rng(spec.seed);
  const int n_logos = draw_count(rng, spec.logos);
  const int n_texts = draw_count(rng, spec.texts);
  const int n_underlays = n_texts > 0 ? draw_count(rng, spec.underlays) : 0;
  const int cells = spec.grid_rows * spec.grid_cols;
  if (1.0 / cells <= kValidAreaFraction) {
    throw InputError(fmt::format("a {}x{} grid makes cells too small to be valid", spec.grid_rows, spec.grid_cols));
  }
  if (n_logos + n_texts > cells) {
    throw InputError(fmt::format("{} elements requested but the grid has only {} cells",
                                 n_logos + n_texts, cells));
  }

  // Mean saliency per cell over the pixels whose centers fall inside it.
  std::vector<double> mean(cells, 0.0);
  for (int r = 0; r < spec.grid_rows; ++r) {
    for (int c = 0; c < spec.grid_cols; ++c) {
      CoverageMask mask(saliency.width(), saliency.height());
      paint_box(mask, grid_cell(spec, r, c));
      double sum = 0.0;
      std::size_t count = 0;
      const auto bits = mask.bits();
      const auto values = saliency.values();
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        sum += values[i];
        ++count;
      }
      // A cell with no pixel center (canvas narrower than the grid) is never preferred.
      mean[r * spec.grid_cols + c] = count > 0 ? sum / static_cast<double>(count) : 2.0;
    }
  }
  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mean[a] < mean[b]; });

  Layout layout;
  layout.canvas_id = canvas_id;
  layout.canvas_w = spec.canvas_w;
  layout.canvas_h = spec.canvas_h;
  auto add = [&](ElementClass cls, const BBox& box) {
    layout.elements.push_back(Element{cls, box, static_cast<int>(layout.elements.size())});
  };
  int next_cell = 0;
  auto take_cell = [&] {
    const int cell = order[next_cell++];
    return grid_cell(spec, cell / spec.grid_cols, cell % spec.grid_cols);
  };
  for (int i = 0; i < n_logos; ++i) add(ElementClass::Logo, take_cell());
  const int first_text = static_cast<int>(layout.elements.size());
  for (int i = 0; i < n_texts; ++i) add(ElementClass::Text, take_cell());
  for (int i = 0; i < n_underlays; ++i) {
    const auto pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_texts)));
    add(ElementClass::Underlay, layout.elements[first_text + pick].box);
  }
  return layout;
}

}  // namespace layoutbench::gen
