#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layoutbench/dsf.hpp"
#include "layoutbench/geometry.hpp"
#include "layoutbench/raster.hpp"

namespace layoutbench::io {

// Native annotation format: UTF-8 text, one JSON object per line.
//
//   {"schema":"layoutbench.annotations","version":1}
//   {"canvas_id":"12","layout_id":"","split":"train","canvas_w":513,
//    "canvas_h":750,"elements":[{"class":"text","box":[x1,y1,x2,y2]}, ...]}
//
// The header line is optional on input and always written on output. Blank
// lines are ignored. "layout_id" and "split" are optional ("" and "train").
inline constexpr const char* kAnnotationSchema = "layoutbench.annotations";
inline constexpr const char* kSequenceSchema = "layoutbench.sequences";
inline constexpr int kFormatVersion = 1;

struct AnnotationRecord {
  Layout layout;
  std::string split = "train";

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<AnnotationRecord> records;
  std::vector<RecordError> errors;

  std::vector<Layout> layouts() const;
};

/// Column layout of a published-dataset CSV. Each row carries one canvas
/// path, class id(s) and box(es); class and box cells hold either a single
/// value ("2", "[x1, y1, x2, y2]") or JSON lists of equal length.
/// Consecutive rows naming the same canvas are merged into one layout.
struct TabularConfig {
  std::string canvas_column = "poster_path";
  std::string class_column = "cls_elem";
  std::string box_column = "box_elem";
  // Optional per-row canvas size columns; the defaults apply when empty.
  std::string width_column;
  std::string height_column;
  int default_canvas_w = 513;
  int default_canvas_h = 750;
  std::map<int, ElementClass> class_map = {
      {1, ElementClass::Text}, {2, ElementClass::Logo}, {3, ElementClass::Underlay}};
  std::string split = "train";
  // Use the file stem of the canvas cell ("a/b/17.png" -> "17") as canvas id.
  bool canvas_id_from_stem = true;
};

/// Reads a TabularConfig from a JSON file; missing keys keep their defaults.
/// "class_map" maps id strings to class names, e.g. {"1": "text"}.
TabularConfig load_tabular_config(const std::filesystem::path& path);

enum class AnnotationFormat { Native, Tabular };

/// Native unless the extension is .csv.
AnnotationFormat guess_format(const std::filesystem::path& path);

LoadResult read_native(std::istream& in);
LoadResult read_tabular(std::istream& in, const TabularConfig& config);

/// Loads and canonicalizes annotations. Element indices follow file order.
/// Bad records are reported in `errors` with their line number and skipped.
/// Throws InputError when the file cannot be opened.
LoadResult load_annotations(const std::filesystem::path& path, AnnotationFormat format,
                            const TabularConfig& config = {});

void write_native(std::ostream& out, const std::vector<AnnotationRecord>& records);
void save_annotations(const std::filesystem::path& path, const std::vector<AnnotationRecord>& records);

struct SequenceRecord {
  AnnotationRecord source;
  dsf::DesignSequence sequence;
};

/// Sequence files reuse the annotation record with elements in sequence
/// order, plus "order" (source indices, -1 for pads), "strategy", "seed",
/// "length" (null when not fitted) and "orphans".
void write_sequences(std::ostream& out, const std::vector<SequenceRecord>& records);
std::vector<SequenceRecord> read_sequences(std::istream& in);

/// Loads an 8-bit image as a [0, 1] raster. Colour images are reduced to
/// luminance 0.299 R + 0.587 G + 0.114 B before scaling by 1/255. Throws
/// InputError when unreadable or when `expected` dims do not match.
Raster load_raster(const std::filesystem::path& path,
                   std::optional<std::pair<int, int>> expected = std::nullopt);

/// Writes a raster as an 8-bit grayscale image, rounding v * 255.
void save_raster(const std::filesystem::path& path, const Raster& raster);

/// Maps canvas ids to image files in a directory (matched by file name or
/// by stem). Non-image files are ignored.
class ImageIndex {
 public:
  ImageIndex() = default;
  explicit ImageIndex(const std::filesystem::path& dir);

  std::optional<std::filesystem::path> find(const std::string& canvas_id) const;
  std::size_t size() const { return by_name_.size(); }
  /// Image stems in sorted order.
  std::vector<std::string> stems() const;

 private:
  std::map<std::string, std::filesystem::path> by_name_;
  std::map<std::string, std::filesystem::path> by_stem_;
};

bool is_image_file(const std::filesystem::path& path);

struct DatasetStats {
  std::size_t n_pairs = 0;
  std::size_t n_canvases = 0;
  // Element count -> number of layouts.
  std::map<int, std::size_t> histogram;
  int max_elements = 0;
  std::map<ElementClass, std::size_t> class_counts;
  // Layouts with more than kComplexLayoutThreshold elements.
  std::size_t complex_layouts = 0;
};

inline constexpr int kComplexLayoutThreshold = 10;

/// Statistics over ingested layouts. `canvas_ids` lists the available
/// canvases; when absent the distinct canvas ids of the layouts are counted.
DatasetStats dataset_stats(const std::vector<Layout>& layouts,
                           const std::optional<std::vector<std::string>>& canvas_ids = std::nullopt);

}  // namespace layoutbench::io
