#include "layoutbench/raster.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace layoutbench {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InputError(fmt::format("raster dimensions must be positive, got {}x{}", width, height));
  }
}

}  // namespace

Raster::Raster(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  if (!(fill >= 0.0 && fill <= 1.0)) {
    throw InputError(fmt::format("raster fill value {} outside [0, 1]", fill));
  }
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster::Raster(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw InputError(fmt::format("raster {}x{} needs {} values, got {}", width, height,
                                 static_cast<std::size_t>(width) * height, values_.size()));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError(fmt::format("raster value {} outside [0, 1]", v));
    }
  }
}

void Raster::set(int x, int y, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InputError(fmt::format("raster value {} outside [0, 1]", v));
  }
  values_[index(x, y)] = v;
}

SaliencyRaster composite_saliency(const SaliencyRaster& a, const SaliencyRaster& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InputError(fmt::format("saliency maps differ in size: {}x{} vs {}x{}", a.width(),
                                 a.height(), b.width(), b.height()));
  }
  std::vector<double> out(a.size());
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(va[i], vb[i]);
  return SaliencyRaster(a.width(), a.height(), std::move(out));
}

std::size_t CoverageMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

CoverageMask CoverageMask::minus(const CoverageMask& other) const {
  if (other.width_ != width_ || other.height_ != height_) {
    throw InputError("coverage masks differ in size");
  }
  CoverageMask out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i]) out.bits_[i] = 0;
  }
  return out;
}

void paint_box(CoverageMask& mask, const BBox& box, double scale_x, double scale_y) {
  // Pixel x is covered iff x1 <= x + 0.5 < x2, i.e. ceil(x1 - 0.5) <= x < ceil(x2 - 0.5).
  auto first = [](double edge) { return std::ceil(edge - 0.5); };
  const double x_lo = std::max(0.0, first(box.x1 * scale_x));
  const double x_hi = std::min(static_cast<double>(mask.width()), first(box.x2 * scale_x));
  const double y_lo = std::max(0.0, first(box.y1 * scale_y));
  const double y_hi = std::min(static_cast<double>(mask.height()), first(box.y2 * scale_y));
  if (x_lo >= x_hi || y_lo >= y_hi) return;
  for (int y = static_cast<int>(y_lo); y < static_cast<int>(y_hi); ++y) {
    for (int x = static_cast<int>(x_lo); x < static_cast<int>(x_hi); ++x) {
      mask.set(x, y, true);
    }
  }
}

bool any_class(const Element&) { return true; }

ElementFilter class_filter(std::initializer_list<ElementClass> classes) {
  std::vector<ElementClass> allowed(classes);
  return [allowed](const Element& e) {
    return std::find(allowed.begin(), allowed.end(), e.cls) != allowed.end();
  };
}

CoverageMask rasterize_coverage(const Layout& layout, const ElementFilter& filter, int width,
                                int height) {
  check_dims(width, height);
  if (width % layout.canvas_w != 0 || height % layout.canvas_h != 0 ||
      width / layout.canvas_w != height / layout.canvas_h) {
    throw InputError(fmt::format("raster {}x{} is not an integer scale of canvas {}x{}", width,
                                 height, layout.canvas_w, layout.canvas_h));
  }
  const double scale = static_cast<double>(width / layout.canvas_w);
  CoverageMask mask(width, height);
  for (const Element& e : layout.elements) {
    if (!filter(e) || !is_valid(e, layout.canvas_w, layout.canvas_h)) continue;
    paint_box(mask, e.box, scale, scale);
  }
  return mask;
}

}  // namespace layoutbench
