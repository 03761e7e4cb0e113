#pragma once

// On-disk dataset fixture for driving the commands: an annotation file, one
// saliency directory and a canvas directory, all under a fresh temp dir.

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "layoutbench/cli.hpp"
#include "layoutbench/dataset_io.hpp"
#include "layoutbench/render.hpp"

namespace layoutbench::testing {

namespace fs = std::filesystem;

class DatasetFixture {
 public:
  explicit DatasetFixture(const std::string& name) {
    root_ = fs::temp_directory_path() / ("layoutbench_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_ / "saliency_1");
    fs::create_directories(root_ / "canvases");
  }
  ~DatasetFixture() { fs::remove_all(root_); }
  DatasetFixture(const DatasetFixture&) = delete;
  DatasetFixture& operator=(const DatasetFixture&) = delete;

  const fs::path& root() const { return root_; }
  fs::path annotations() const { return root_ / "annotations.jsonl"; }

  void add(const Layout& layout, const Raster& saliency, const Raster& luminance) {
    records_.push_back({layout, "train"});
    io::save_raster(root_ / "saliency_1" / (layout.canvas_id + ".png"), saliency);
    render::RgbImage img = render::blank(luminance.width(), luminance.height());
    for (int y = 0; y < luminance.height(); ++y) {
      for (int x = 0; x < luminance.width(); ++x) {
        const auto v = static_cast<std::uint8_t>(std::lround(luminance.at(x, y) * 255.0));
        for (int k = 0; k < 3; ++k) img.pixels[(static_cast<std::size_t>(y) * img.width + x) * 3 + k] = v;
      }
    }
    render::save_png(root_ / "canvases" / (layout.canvas_id + ".png"), img);
  }

  void add_layout_only(const Layout& layout) { records_.push_back({layout, "train"}); }

  void write(const std::string& extra_lines = {}) const {
    io::save_annotations(annotations(), records_);
    if (!extra_lines.empty()) std::ofstream(annotations(), std::ios::app) << extra_lines;
  }

  cli::RunConfig config(const std::string& command) const {
    cli::RunConfig c;
    c.command = command;
    c.annotations = annotations();
    c.saliency_dirs = {root_ / "saliency_1"};
    c.canvas_dir = root_ / "canvases";
    return c;
  }

 private:
  fs::path root_;
  std::vector<io::AnnotationRecord> records_;
};

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct CommandOutput {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename Fn>
CommandOutput run_command(Fn fn, const cli::RunConfig& config) {
  std::ostringstream out, err;
  const int code = fn(config, out, err);
  return {code, out.str(), err.str()};
}

// Random layouts on small canvases with random rasters; rasters are
// quantized to 8 bits so they survive the PNG round trip exactly.
inline void fill_random(DatasetFixture& fx, std::uint64_t seed, int n, int w, int h, int max_elements,
                        Layout (*make)(std::mt19937_64&, int, int, int)) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  auto raster = [&] {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) x = byte(rng) / 255.0;
    return Raster(w, h, std::move(v));
  };
  for (int i = 0; i < n; ++i) {
    Layout l = make(rng, w, h, max_elements);
    l.canvas_id = "p" + std::to_string(i);
    for (std::size_t k = 0; k < l.elements.size(); ++k) l.elements[k].index = static_cast<int>(k);
    fx.add(l, raster(), raster());
  }
}

}  // namespace layoutbench::testing
