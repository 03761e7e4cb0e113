#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "layoutbench/geometry.hpp"

namespace layoutbench::render {

/// 8-bit interleaved RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3, row-major

  std::array<std::uint8_t, 3> at(int x, int y) const;
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

RgbImage blank(int width, int height);

/// Loads any 8-bit image as RGB (grayscale is replicated). Throws InputError.
RgbImage load_rgb(const std::filesystem::path& path);
/// PNG output. Throws InputError when the file cannot be written.
void save_png(const std::filesystem::path& path, const RgbImage& image);

// Class colours and overlay opacity are fixed so renders diff cleanly.
inline constexpr std::array<std::uint8_t, 3> kTextColor = {230, 57, 70};
inline constexpr std::array<std::uint8_t, 3> kLogoColor = {29, 114, 243};
inline constexpr std::array<std::uint8_t, 3> kUnderlayColor = {46, 184, 92};
// Opacity out of 255.
inline constexpr int kAlpha = 128;

std::array<std::uint8_t, 3> class_color(ElementClass cls);

/// Tints every pixel whose center lies inside an element box (pixel-center
/// rule, clipped to the image): out = (base * (255 - a) + color * a + 127) / 255.
/// Underlays are drawn first, then logos, then texts; pads are skipped.
/// `background` must match the canvas size; pass nullptr for a white field.
RgbImage render_wireframe(const Layout& layout, const RgbImage* background);

}  // namespace layoutbench::render
