#pragma once

#include <cstdint>
#include <filesystem>

#include "layoutbench/geometry.hpp"
#include "layoutbench/raster.hpp"

namespace layoutbench::gen {

struct CountRange {
  int min = 0;
  int max = 0;
};

struct FractionRange {
  double min = 0.1;
  double max = 0.3;
};

/// Parameters for the synthetic layout generators. Sizes are fractions of
/// the canvas width/height.
struct GenSpec {
  int canvas_w = 513;
  int canvas_h = 750;
  CountRange texts{1, 4};
  CountRange logos{0, 1};
  CountRange underlays{0, 0};
  FractionRange width{0.1, 0.5};
  FractionRange height{0.05, 0.2};
  // Extra margin around the enclosed text, as a fraction of the canvas.
  FractionRange underlay_margin{0.0, 0.05};
  int grid_rows = 8;
  int grid_cols = 8;
  std::uint64_t seed = 0;
};

/// Throws InputError when ranges are empty, fractions fall outside (0, 1],
/// the smallest box would not be valid, or underlays are requested without
/// texts to decorate.
void check_spec(const GenSpec& spec);

/// Reads a GenSpec from JSON; keys mirror the struct fields, ranges are
/// two-element arrays ("texts": [1, 4]). Missing keys keep defaults.
GenSpec load_gen_spec(const std::filesystem::path& path);

/// Random layout: counts and box sizes drawn uniformly from the spec, every
/// box fully inside the canvas. Elements are emitted logos, texts, then
/// underlays; each underlay encloses a randomly chosen text.
Layout random_layout(const GenSpec& spec, const std::string& canvas_id = "generated");

/// Splits the canvas into grid_rows x grid_cols cells and puts each logo and
/// text into one of the cells of lowest mean saliency (ties in row-major
/// order), filling the cell. Underlays share the cell of a text they
/// decorate. Counts come from the spec ranges and seed. Throws InputError
/// when more anchors are requested than there are cells, or the saliency
/// map size differs from the canvas.
Layout saliency_grid_layout(const SaliencyRaster& saliency, const GenSpec& spec,
                            const std::string& canvas_id = "generated");

/// Cell rectangle (r, c) of the spec grid, in canvas pixels.
BBox grid_cell(const GenSpec& spec, int row, int col);

}  // namespace layoutbench::gen
