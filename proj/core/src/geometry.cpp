#include "layoutbench/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace layoutbench {

std::string_view to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Text:
      return "text";
    case ElementClass::Logo:
      return "logo";
    case ElementClass::Underlay:
      return "underlay";
    case ElementClass::Pad:
      return "pad";
  }
  return "unknown";
}

std::optional<ElementClass> parse_annotation_class(std::string_view name) {
  if (name == "text") return ElementClass::Text;
  if (name == "logo") return ElementClass::Logo;
  if (name == "underlay") return ElementClass::Underlay;
  return std::nullopt;
}

BBox canonicalize(const BBox& box) {
  if (!std::isfinite(box.x1) || !std::isfinite(box.y1) ||
      !std::isfinite(box.x2) || !std::isfinite(box.y2)) {
    throw InputError("box has a non-finite coordinate");
  }
  BBox out = box;
  if (out.x1 > out.x2) std::swap(out.x1, out.x2);
  if (out.y1 > out.y2) std::swap(out.y1, out.y2);
  return out;
}

double clipped_area(const BBox& box, int canvas_w, int canvas_h) {
  const BBox canvas{0.0, 0.0, static_cast<double>(canvas_w),
                    static_cast<double>(canvas_h)};
  return intersection_area(box, canvas);
}

double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double giou(const BBox& a, const BBox& b) {
  const BBox hull{std::min(a.x1, b.x1), std::min(a.y1, b.y1),
                  std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
  const double hull_area = hull.area();
  if (hull_area <= 0.0) return 0.0;
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  const double ratio = uni > 0.0 ? inter / uni : 0.0;
  return ratio - (hull_area - uni) / hull_area;
}

bool contains(const BBox& outer, const BBox& inner) {
  return inner.x1 >= outer.x1 && inner.y1 >= outer.y1 &&
         inner.x2 <= outer.x2 && inner.y2 <= outer.y2;
}

CenterBox corners_to_center(const BBox& box) {
  return CenterBox{(box.x1 + box.x2) / 2.0, (box.y1 + box.y2) / 2.0,
                   box.x2 - box.x1, box.y2 - box.y1};
}

BBox center_to_corners(const CenterBox& box) {
  if (!(box.w >= 0.0) || !(box.h >= 0.0)) {
    throw InputError(
        fmt::format("center box has negative extent (w={}, h={})", box.w,
                    box.h));
  }
  return BBox{box.xc - box.w / 2.0, box.yc - box.h / 2.0,
              box.xc + box.w / 2.0, box.yc + box.h / 2.0};
}

bool is_valid(const Element& e, int canvas_w, int canvas_h) {
  if (e.cls == ElementClass::Pad) return false;
  const double threshold = kValidAreaFraction * static_cast<double>(canvas_w) *
                           static_cast<double>(canvas_h);
  return clipped_area(e.box, canvas_w, canvas_h) > threshold;
}

void check_layout(const Layout& layout) {
  if (layout.canvas_w <= 0 || layout.canvas_h <= 0) {
    throw InputError(fmt::format("layout '{}' has non-positive canvas {}x{}",
                                 layout.canvas_id, layout.canvas_w,
                                 layout.canvas_h));
  }
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    const Element& e = layout.elements[i];
    if (e.index != static_cast<int>(i)) {
      throw InputError(fmt::format(
          "layout '{}': element at position {} carries index {}",
          layout.canvas_id, i, e.index));
    }
    if (canonicalize(e.box) != e.box) {
      throw InputError(fmt::format("layout '{}': element {} is not canonical",
                                   layout.canvas_id, i));
    }
  }
}

Layout canonical_layout(Layout layout) {
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    layout.elements[i].box = canonicalize(layout.elements[i].box);
    layout.elements[i].index = static_cast<int>(i);
  }
  return layout;
}

}  // namespace layoutbench
