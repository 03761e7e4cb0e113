#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace layoutbench {

/// Raised for malformed or out-of-contract input data (bad boxes, unknown
/// classes, dimension mismatches, unreadable files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ElementClass { Text, Logo, Underlay, Pad };

std::string_view to_string(ElementClass c);
/// Parses "text", "logo", "underlay" (case-sensitive). "pad" is rejected:
/// pads only come out of sequence fitting, never out of annotation files.
std::optional<ElementClass> parse_annotation_class(std::string_view name);

/// Corner-form box in pixel coordinates: (x1, y1) top-left, (x2, y2)
/// bottom-right. Boxes may extend past the canvas.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Center form: (xc, yc) center, w/h non-negative extents.
struct CenterBox {
  double xc = 0.0;
  double yc = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const CenterBox&, const CenterBox&) = default;
};

struct Element {
  ElementClass cls = ElementClass::Text;
  BBox box;
  // Position in the source annotation; -1 for pads.
  int index = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

struct Layout {
  std::string canvas_id;
  // Distinguishes several layouts over the same canvas; may be empty.
  std::string layout_id;
  int canvas_w = 0;
  int canvas_h = 0;
  std::vector<Element> elements;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Swaps coordinate pairs so that x1 <= x2 and y1 <= y2.
/// Throws InputError on NaN or infinite coordinates.
BBox canonicalize(const BBox& box);

/// Area of the part of `box` inside [0, canvas_w] x [0, canvas_h].
double clipped_area(const BBox& box, int canvas_w, int canvas_h);

double intersection_area(const BBox& a, const BBox& b);

/// Intersection over union; 0 when the union is empty.
double iou(const BBox& a, const BBox& b);

/// Generalized IoU: IoU - (hull - union) / hull, where hull is the smallest
/// box enclosing both. 0 when the hull has zero area.
double giou(const BBox& a, const BBox& b);

/// True when `inner` lies within `outer`, boundaries included.
bool contains(const BBox& outer, const BBox& inner);

CenterBox corners_to_center(const BBox& box);
/// Inverse of corners_to_center. Throws InputError on negative w or h.
BBox center_to_corners(const CenterBox& box);

/// An element is valid when its in-canvas area is strictly greater than
/// 0.1% of the canvas area. Pads are never valid.
bool is_valid(const Element& e, int canvas_w, int canvas_h);

/// Fraction of the canvas an element must exceed to be valid.
inline constexpr double kValidAreaFraction = 0.001;

/// Checks the Layout invariants (positive canvas, indices 0..n-1 in order,
/// canonical finite boxes). Throws InputError describing the first violation.
void check_layout(const Layout& layout);

/// Returns a copy with every box canonicalized and indices renumbered 0..n-1.
Layout canonical_layout(Layout layout);

}  // namespace layoutbench
