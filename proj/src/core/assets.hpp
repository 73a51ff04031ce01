#pragma once

#include <cstdint>
#include <vector>

namespace figforge::assets {

// 8-bit RGBA raster, row-major.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 4

  std::uint8_t* px(int x, int y) { return pixels.data() + 4 * (static_cast<size_t>(y) * width + x); }
  const std::uint8_t* px(int x, int y) const {
    return pixels.data() + 4 * (static_cast<size_t>(y) * width + x);
  }
};

RasterImage make_image(int width, int height);

// Lossless PNG round trip for 8-bit images. decode accepts gray, gray+alpha,
// RGB and RGBA at bit depth 8 (no interlacing) and converts to RGBA.
std::vector<std::uint8_t> png_encode(const RasterImage& image);
RasterImage png_decode(const std::vector<std::uint8_t>& bytes);

// Row-major tiles; tile (r, c) spans pixel rows floor(r*H/m)..floor((r+1)*H/m).
// The tiles partition the source exactly.
std::vector<RasterImage> slice_grid(const RasterImage& image, int m, int n);

// Near-white low-chroma pixels become fully transparent: alpha is zeroed
// where min(R,G,B) >= threshold and max-min <= chroma_window. Idempotent.
RasterImage remove_background(const RasterImage& image, int threshold = 245,
                              int chroma_window = 10);

// Smallest rect containing all alpha > 0 pixels; a fully transparent image
// collapses to a single transparent pixel.
RasterImage trim_transparent(const RasterImage& image);

}  // namespace figforge::assets
