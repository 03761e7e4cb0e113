#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "layoutbench/geometry.hpp"

namespace layoutbench {

/// Single-channel row-major raster with values in [0, 1]. Used for saliency
/// maps and canvas luminance.
class Raster {
 public:
  Raster() = default;
  /// Filled with `fill`.
  Raster(int width, int height, double fill = 0.0);
  /// Takes ownership of `values`; throws InputError when the size does not
  /// match or a value is non-finite or outside [0, 1].
  Raster(int width, int height, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double at(int x, int y) const { return values_[index(x, y)]; }
  void set(int x, int y, double v);

  std::span<const double> values() const { return values_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

using SaliencyRaster = Raster;
using LuminanceRaster = Raster;

/// Pixel-wise maximum of two saliency maps. Throws InputError on a size
/// mismatch.
SaliencyRaster composite_saliency(const SaliencyRaster& a, const SaliencyRaster& b);

/// Boolean per-pixel coverage.
class CoverageMask {
 public:
  CoverageMask() = default;
  CoverageMask(int width, int height) : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v) { bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }
  std::size_t count() const;

  /// Pixels set here and not in `other`. Sizes must match.
  CoverageMask minus(const CoverageMask& other) const;

  std::span<const unsigned char> bits() const { return bits_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<unsigned char> bits_;
};

/// Marks every pixel whose center (x + 0.5, y + 0.5) lies in [x1, x2) x
/// [y1, y2) of `box`, with box coordinates scaled by (scale_x, scale_y).
void paint_box(CoverageMask& mask, const BBox& box, double scale_x = 1.0, double scale_y = 1.0);

using ElementFilter = std::function<bool(const Element&)>;

/// Coverage of the valid elements of `layout` accepted by `filter`, at
/// `width` x `height`. The raster must be the canvas size or an integer
/// multiple of it on both axes; boxes are scaled accordingly.
CoverageMask rasterize_coverage(const Layout& layout, const ElementFilter& filter, int width, int height);

bool any_class(const Element&);
ElementFilter class_filter(std::initializer_list<ElementClass> classes);

}  // namespace layoutbench
