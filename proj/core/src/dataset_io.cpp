#include "layoutbench/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/tokenizer.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace layoutbench::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Per-record failure; caught by the readers and turned into a RecordError.
struct RecordFailure {
  std::string message;
};

[[noreturn]] void fail(std::string message) { throw RecordFailure{std::move(message)}; }

BBox parse_box(const json& j) {
  if (!j.is_array() || j.size() != 4) fail("box must be an array of four numbers");
  double c[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) fail("box must be an array of four numbers");
    c[i] = j[i].get<double>();
    if (!std::isfinite(c[i])) fail("box has a non-finite coordinate");
  }
  return canonicalize(BBox{c[0], c[1], c[2], c[3]});
}

json box_json(const BBox& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }

int positive_int(const json& j, const char* key) {
  if (!j.contains(key)) fail(fmt::format("missing '{}'", key));
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0 ||
      v.get<long long>() > std::numeric_limits<int>::max()) {
    fail(fmt::format("'{}' must be a positive integer", key));
  }
  return v.get<int>();
}

AnnotationRecord parse_record(const json& j) {
  if (!j.is_object()) fail("record is not a JSON object");
  AnnotationRecord rec;
  if (!j.contains("canvas_id") || !j["canvas_id"].is_string() ||
      j["canvas_id"].get_ref<const std::string&>().empty()) {
    fail("missing or empty 'canvas_id'");
  }
  rec.layout.canvas_id = j["canvas_id"].get<std::string>();
  if (j.contains("layout_id")) {
    if (!j["layout_id"].is_string()) fail("'layout_id' must be a string");
    rec.layout.layout_id = j["layout_id"].get<std::string>();
  }
  if (j.contains("split")) {
    if (!j["split"].is_string()) fail("'split' must be a string");
    rec.split = j["split"].get<std::string>();
  }
  rec.layout.canvas_w = positive_int(j, "canvas_w");
  rec.layout.canvas_h = positive_int(j, "canvas_h");
  if (!j.contains("elements") || !j["elements"].is_array()) fail("missing 'elements' array");
  for (const json& e : j["elements"]) {
    if (!e.is_object() || !e.contains("class") || !e["class"].is_string()) {
      fail("element needs a 'class' string");
    }
    const auto& cls_name = e["class"].get_ref<const std::string&>();
    const auto cls = parse_annotation_class(cls_name);
    if (!cls) fail(fmt::format("unknown element class '{}'", cls_name));
    if (!e.contains("box")) fail("element needs a 'box'");
    const int index = static_cast<int>(rec.layout.elements.size());
    rec.layout.elements.push_back(Element{*cls, parse_box(e["box"]), index});
  }
  return rec;
}

json record_json(const AnnotationRecord& rec) {
  json elements = json::array();
  for (const Element& e : rec.layout.elements) {
    elements.push_back({{"class", to_string(e.cls)}, {"box", box_json(e.box)}});
  }
  json j;
  j["canvas_id"] = rec.layout.canvas_id;
  j["layout_id"] = rec.layout.layout_id;
  j["split"] = rec.split;
  j["canvas_w"] = rec.layout.canvas_w;
  j["canvas_h"] = rec.layout.canvas_h;
  j["elements"] = std::move(elements);
  return j;
}

bool is_header(const json& j) { return j.is_object() && j.contains("schema"); }

void check_header(const json& j, const char* schema) {
  if (!j["schema"].is_string() || j["schema"].get<std::string>() != schema) {
    throw InputError(fmt::format("expected schema '{}', found {}", schema, j["schema"].dump()));
  }
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kFormatVersion) {
    throw InputError(fmt::format("unsupported {} version {}", schema,
                                 j.contains("version") ? j["version"].dump() : "(none)"));
  }
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

json parse_json_or_fail(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("malformed JSON");
  return j;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  // Backslash is not an escape in the published CSVs; use an unused char.
  boost::tokenizer<Separator> tok(line, Separator('\0', ',', '"'));
  return {tok.begin(), tok.end()};
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError(fmt::format("CSV has no column '{}'", name));
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<int> parse_class_cell(const std::string& cell) {
  const json j = parse_json_or_fail(cell);
  std::vector<int> ids;
  if (j.is_number_integer()) {
    ids.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const json& v : j) {
      if (!v.is_number_integer()) fail(fmt::format("class cell '{}' is not a list of integers", cell));
      ids.push_back(v.get<int>());
    }
  } else {
    fail(fmt::format("class cell '{}' is not an integer or list", cell));
  }
  return ids;
}

std::vector<BBox> parse_box_cell(const std::string& cell) {
  const json j = parse_json_or_fail(cell);
  if (!j.is_array()) fail(fmt::format("box cell '{}' is not a list", cell));
  std::vector<BBox> boxes;
  if (!j.empty() && j[0].is_array()) {
    for (const json& b : j) boxes.push_back(parse_box(b));
  } else {
    boxes.push_back(parse_box(j));
  }
  return boxes;
}

int parse_dim_cell(const std::string& cell, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(cell, &used);
    if (used == cell.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  fail(fmt::format("{} '{}' is not a positive integer", what, cell));
}

}  // namespace

std::vector<Layout> LoadResult::layouts() const {
  std::vector<Layout> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.layout);
  return out;
}

AnnotationFormat guess_format(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? AnnotationFormat::Tabular : AnnotationFormat::Native;
}

LoadResult read_native(std::istream& in) {
  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    try {
      const json j = parse_json_or_fail(line);
      if (first && is_header(j)) {
        check_header(j, kAnnotationSchema);
        first = false;
        continue;
      }
      first = false;
      result.records.push_back(parse_record(j));
    } catch (const RecordFailure& f) {
      first = false;
      result.errors.push_back({line_no, f.message});
    } catch (const InputError& e) {
      // Header problems are fatal; box errors from canonicalize are not.
      if (first) throw;
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

LoadResult read_tabular(std::istream& in, const TabularConfig& config) {
  LoadResult result;
  std::string line;
  if (!std::getline(in, line)) return result;
  std::vector<std::string> header = split_csv_row(line);
  for (auto& h : header) h = trim(h);
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  const std::size_t canvas_col = column_of(header, config.canvas_column);
  const std::size_t class_col = column_of(header, config.class_column);
  const std::size_t box_col = column_of(header, config.box_column);
  std::optional<std::size_t> width_col;
  std::optional<std::size_t> height_col;
  if (!config.width_column.empty()) width_col = column_of(header, config.width_column);
  if (!config.height_column.empty()) height_col = column_of(header, config.height_column);

  std::optional<AnnotationRecord> current;
  bool current_bad = false;
  auto flush = [&] {
    if (current && !current_bad) result.records.push_back(std::move(*current));
    current.reset();
    current_bad = false;
  };

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    std::string canvas_id;
    try {
      std::vector<std::string> cells;
      try {
        cells = split_csv_row(line);
      } catch (const boost::escaped_list_error& e) {
        fail(fmt::format("malformed CSV row: {}", e.what()));
      }
      for (auto& c : cells) c = trim(c);
      const std::size_t needed = std::max({canvas_col, class_col, box_col, width_col.value_or(0),
                                           height_col.value_or(0)});
      if (cells.size() <= needed) fail(fmt::format("row has {} cells, expected more than {}", cells.size(), needed));
      canvas_id = cells[canvas_col];
      if (config.canvas_id_from_stem) canvas_id = fs::path(canvas_id).stem().string();
      if (canvas_id.empty()) fail("empty canvas cell");

      if (!current || current->layout.canvas_id != canvas_id) {
        flush();
        current.emplace();
        current->split = config.split;
        current->layout.canvas_id = canvas_id;
        current->layout.canvas_w =
            width_col ? parse_dim_cell(cells[*width_col], "canvas width") : config.default_canvas_w;
        current->layout.canvas_h =
            height_col ? parse_dim_cell(cells[*height_col], "canvas height") : config.default_canvas_h;
      }
      const std::vector<int> ids = parse_class_cell(cells[class_col]);
      const std::vector<BBox> boxes = parse_box_cell(cells[box_col]);
      if (ids.size() != boxes.size()) {
        fail(fmt::format("{} class ids but {} boxes", ids.size(), boxes.size()));
      }
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto it = config.class_map.find(ids[k]);
        if (it == config.class_map.end()) fail(fmt::format("unknown class id {}", ids[k]));
        const int index = static_cast<int>(current->layout.elements.size());
        current->layout.elements.push_back(Element{it->second, boxes[k], index});
      }
    } catch (const RecordFailure& f) {
      result.errors.push_back({line_no, f.message});
      if (current && (canvas_id.empty() || current->layout.canvas_id == canvas_id)) current_bad = true;
    } catch (const InputError& e) {
      result.errors.push_back({line_no, e.what()});
      if (current) current_bad = true;
    }
  }
  flush();
  return result;
}

TabularConfig load_tabular_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open tabular config '{}'", path.string()));
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError(fmt::format("tabular config '{}' is not a JSON object", path.string()));
  }
  TabularConfig config;
  try {
    auto str = [&](const char* key, std::string& out) {
      if (j.contains(key)) out = j.at(key).get<std::string>();
    };
    str("canvas_column", config.canvas_column);
    str("class_column", config.class_column);
    str("box_column", config.box_column);
    str("width_column", config.width_column);
    str("height_column", config.height_column);
    str("split", config.split);
    if (j.contains("default_canvas_w")) config.default_canvas_w = j.at("default_canvas_w").get<int>();
    if (j.contains("default_canvas_h")) config.default_canvas_h = j.at("default_canvas_h").get<int>();
    if (j.contains("canvas_id_from_stem")) config.canvas_id_from_stem = j.at("canvas_id_from_stem").get<bool>();
    if (j.contains("class_map")) {
      config.class_map.clear();
      for (const auto& [key, value] : j.at("class_map").items()) {
        const auto cls = parse_annotation_class(value.get<std::string>());
        if (!cls) throw InputError(fmt::format("class map: unknown class '{}'", value.get<std::string>()));
        config.class_map[std::stoi(key)] = *cls;
      }
    }
  } catch (const json::exception& e) {
    throw InputError(fmt::format("tabular config '{}': {}", path.string(), e.what()));
  } catch (const std::invalid_argument&) {
    throw InputError(fmt::format("tabular config '{}': class ids must be integers", path.string()));
  }
  if (config.default_canvas_w <= 0 || config.default_canvas_h <= 0) {
    throw InputError("tabular config: default canvas size must be positive");
  }
  return config;
}

LoadResult load_annotations(const fs::path& path, AnnotationFormat format, const TabularConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open annotations '{}'", path.string()));
  return format == AnnotationFormat::Tabular ? read_tabular(in, config) : read_native(in);
}

void write_native(std::ostream& out, const std::vector<AnnotationRecord>& records) {
  out << json{{"schema", kAnnotationSchema}, {"version", kFormatVersion}}.dump() << '\n';
  for (const auto& rec : records) out << record_json(rec).dump() << '\n';
}

void save_annotations(const fs::path& path, const std::vector<AnnotationRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  write_native(out, records);
}

void write_sequences(std::ostream& out, const std::vector<SequenceRecord>& records) {
  out << json{{"schema", kSequenceSchema}, {"version", kFormatVersion}}.dump() << '\n';
  for (const auto& rec : records) {
    json j = record_json(rec.source);
    json elements = json::array();
    json order = json::array();
    for (const Element& e : rec.sequence.entries) {
      elements.push_back({{"class", to_string(e.cls)}, {"box", box_json(e.box)}, {"index", e.index}});
      order.push_back(e.index);
    }
    j["elements"] = std::move(elements);
    j["order"] = std::move(order);
    j["strategy"] = dsf::to_string(rec.sequence.strategy);
    j["seed"] = rec.sequence.seed;
    j["length"] = rec.sequence.fitted_length ? json(*rec.sequence.fitted_length) : json(nullptr);
    j["orphans"] = rec.sequence.orphan_underlays;
    out << j.dump() << '\n';
  }
}

std::vector<SequenceRecord> read_sequences(std::istream& in) {
  std::vector<SequenceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw InputError(fmt::format("line {}: malformed JSON", line_no));
    if (is_header(j)) {
      check_header(j, kSequenceSchema);
      continue;
    }
    try {
      SequenceRecord rec;
      rec.source.layout.canvas_id = j.at("canvas_id").get<std::string>();
      rec.source.layout.layout_id = j.value("layout_id", "");
      rec.source.split = j.value("split", "train");
      rec.source.layout.canvas_w = j.at("canvas_w").get<int>();
      rec.source.layout.canvas_h = j.at("canvas_h").get<int>();
      const auto strategy = dsf::parse_strategy(j.at("strategy").get<std::string>());
      if (!strategy) throw InputError("unknown strategy");
      rec.sequence.strategy = *strategy;
      rec.sequence.seed = j.at("seed").get<std::uint64_t>();
      if (!j.at("length").is_null()) rec.sequence.fitted_length = j.at("length").get<int>();
      rec.sequence.orphan_underlays = j.at("orphans").get<std::vector<int>>();
      for (const json& e : j.at("elements")) {
        const std::string cls_name = e.at("class").get<std::string>();
        const ElementClass cls = cls_name == "pad" ? ElementClass::Pad : [&] {
          const auto c = parse_annotation_class(cls_name);
          if (!c) throw InputError(fmt::format("unknown class '{}'", cls_name));
          return *c;
        }();
        const json& b = e.at("box");
        rec.sequence.entries.push_back(Element{
            cls, BBox{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(), b.at(3).get<double>()},
            e.at("index").get<int>()});
      }
      // The source layout is the sequence's non-pad elements in index order.
      std::vector<Element> src;
      for (const Element& e : rec.sequence.entries) {
        if (e.cls != ElementClass::Pad) src.push_back(e);
      }
      std::sort(src.begin(), src.end(), [](const Element& a, const Element& b) { return a.index < b.index; });
      rec.source.layout.elements = std::move(src);
      out.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw InputError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

Raster load_raster(const fs::path& path, std::optional<std::pair<int, int>> expected) {
  const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty()) throw InputError(fmt::format("cannot read image '{}'", path.string()));
  if (img.depth() != CV_8U) {
    throw InputError(fmt::format("image '{}' is not 8-bit", path.string()));
  }
  if (expected && (img.cols != expected->first || img.rows != expected->second)) {
    throw InputError(fmt::format("image '{}' is {}x{}, expected {}x{}", path.string(), img.cols,
                                 img.rows, expected->first, expected->second));
  }
  const int channels = img.channels();
  std::vector<double> values(static_cast<std::size_t>(img.cols) * img.rows);
  for (int y = 0; y < img.rows; ++y) {
    const unsigned char* row = img.ptr<unsigned char>(y);
    for (int x = 0; x < img.cols; ++x) {
      const unsigned char* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      double v = 0.0;
      if (channels >= 3) {
        // OpenCV stores BGR. Integer weights keep white at exactly 1.
        const int weighted = 299 * px[2] + 587 * px[1] + 114 * px[0];
        v = static_cast<double>(weighted) / (1000.0 * 255.0);
      } else {
        v = static_cast<double>(px[0]) / 255.0;
      }
      values[static_cast<std::size_t>(y) * img.cols + x] = v;
    }
  }
  return Raster(img.cols, img.rows, std::move(values));
}

void save_raster(const fs::path& path, const Raster& raster) {
  cv::Mat img(raster.height(), raster.width(), CV_8UC1);
  for (int y = 0; y < raster.height(); ++y) {
    for (int x = 0; x < raster.width(); ++x) {
      img.at<unsigned char>(y, x) = static_cast<unsigned char>(std::lround(raster.at(x, y) * 255.0));
    }
  }
  if (!cv::imwrite(path.string(), img)) {
    throw InputError(fmt::format("cannot write image '{}'", path.string()));
  }
}

bool is_image_file(const fs::path& path) {
  static const std::set<std::string> kExtensions = {".png", ".jpg", ".jpeg", ".bmp", ".pgm",
                                                    ".ppm", ".tif", ".tiff", ".webp"};
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return kExtensions.count(ext) > 0;
}

ImageIndex::ImageIndex(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw InputError(fmt::format("'{}' is not a directory", dir.string()));
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_image_file(entry.path())) continue;
    by_name_[entry.path().filename().string()] = entry.path();
    // Two files sharing a stem: the lexicographically smaller name wins.
    const std::string stem = entry.path().stem().string();
    auto it = by_stem_.find(stem);
    if (it == by_stem_.end() || entry.path().filename() < it->second.filename()) {
      by_stem_[stem] = entry.path();
    }
  }
}

std::optional<fs::path> ImageIndex::find(const std::string& canvas_id) const {
  if (auto it = by_name_.find(canvas_id); it != by_name_.end()) return it->second;
  if (auto it = by_stem_.find(canvas_id); it != by_stem_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::string> ImageIndex::stems() const {
  std::vector<std::string> out;
  out.reserve(by_stem_.size());
  for (const auto& [stem, path] : by_stem_) out.push_back(stem);
  return out;
}

DatasetStats dataset_stats(const std::vector<Layout>& layouts,
                           const std::optional<std::vector<std::string>>& canvas_ids) {
  DatasetStats stats;
  stats.n_pairs = layouts.size();
  std::set<std::string> canvases;
  for (const Layout& l : layouts) {
    const int n = static_cast<int>(l.elements.size());
    ++stats.histogram[n];
    stats.max_elements = std::max(stats.max_elements, n);
    if (n > kComplexLayoutThreshold) ++stats.complex_layouts;
    for (const Element& e : l.elements) ++stats.class_counts[e.cls];
    canvases.insert(l.canvas_id);
  }
  if (canvas_ids) {
    stats.n_canvases = std::set<std::string>(canvas_ids->begin(), canvas_ids->end()).size();
  } else {
    stats.n_canvases = canvases.size();
  }
  return stats;
}

}  // namespace layoutbench::io
