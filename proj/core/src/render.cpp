#include "layoutbench/render.hpp"

#include <fmt/format.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "layoutbench/raster.hpp"

namespace layoutbench::render {

std::array<std::uint8_t, 3> RgbImage::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

RgbImage blank(int width, int height) {
  return RgbImage{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * 3, 255)};
}

RgbImage load_rgb(const std::filesystem::path& path) {
  const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty() || img.depth() != CV_8U) {
    throw InputError(fmt::format("cannot read 8-bit image '{}'", path.string()));
  }
  RgbImage out{img.cols, img.rows, std::vector<std::uint8_t>(static_cast<std::size_t>(img.cols) * img.rows * 3)};
  const int channels = img.channels();
  for (int y = 0; y < img.rows; ++y) {
    const unsigned char* row = img.ptr<unsigned char>(y);
    for (int x = 0; x < img.cols; ++x) {
      const unsigned char* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      std::uint8_t* dst = &out.pixels[(static_cast<std::size_t>(y) * img.cols + x) * 3];
      if (channels >= 3) {
        dst[0] = px[2];
        dst[1] = px[1];
        dst[2] = px[0];
      } else {
        dst[0] = dst[1] = dst[2] = px[0];
      }
    }
  }
  return out;
}

void save_png(const std::filesystem::path& path, const RgbImage& image) {
  cv::Mat mat(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const auto px = image.at(x, y);
      mat.at<cv::Vec3b>(y, x) = cv::Vec3b(px[2], px[1], px[0]);
    }
  }
  const std::vector<int> params = {cv::IMWRITE_PNG_COMPRESSION, 6};
  if (!cv::imwrite(path.string(), mat, params)) {
    throw InputError(fmt::format("cannot write image '{}'", path.string()));
  }
}

std::array<std::uint8_t, 3> class_color(ElementClass cls) {
  switch (cls) {
    case ElementClass::Text:
      return kTextColor;
    case ElementClass::Logo:
      return kLogoColor;
    case ElementClass::Underlay:
      return kUnderlayColor;
    case ElementClass::Pad:
      break;
  }
  return {0, 0, 0};
}

RgbImage render_wireframe(const Layout& layout, const RgbImage* background) {
  RgbImage out = background != nullptr ? *background : blank(layout.canvas_w, layout.canvas_h);
  if (out.width != layout.canvas_w || out.height != layout.canvas_h) {
    throw InputError(fmt::format("background is {}x{}, canvas is {}x{}", out.width, out.height,
                                 layout.canvas_w, layout.canvas_h));
  }
  for (ElementClass pass : {ElementClass::Underlay, ElementClass::Logo, ElementClass::Text}) {
    const auto color = class_color(pass);
    for (const Element& e : layout.elements) {
      if (e.cls != pass) continue;
      CoverageMask mask(out.width, out.height);
      paint_box(mask, e.box);
      const auto bits = mask.bits();
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        for (int ch = 0; ch < 3; ++ch) {
          const int base = out.pixels[i * 3 + ch];
          out.pixels[i * 3 + ch] = static_cast<std::uint8_t>((base * (255 - kAlpha) + color[ch] * kAlpha + 127) / 255);
        }
      }
    }
  }
  return out;
}

}  // namespace layoutbench::render
