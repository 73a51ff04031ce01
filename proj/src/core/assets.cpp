#include "core/assets.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "core/error.hpp"

namespace figforge::assets {

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void put32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back((v >> 24) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back(v & 0xFF);
}

std::uint32_t get32be(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

void write_chunk(std::vector<std::uint8_t>& out, const char type[4],
                 const std::vector<std::uint8_t>& payload) {
  put32be(out, static_cast<std::uint32_t>(payload.size()));
  size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
  put32be(out, crc);
}

std::vector<std::uint8_t> zlib_compress(const std::vector<std::uint8_t>& src) {
  uLongf bound = compressBound(static_cast<uLong>(src.size()));
  std::vector<std::uint8_t> out(bound);
  if (compress2(out.data(), &bound, src.data(), static_cast<uLong>(src.size()), 6) != Z_OK) {
    throw Error("PNG_ENCODE", "zlib compression failed");
  }
  out.resize(bound);
  return out;
}

std::vector<std::uint8_t> zlib_decompress(const std::vector<std::uint8_t>& src,
                                          size_t expected) {
  std::vector<std::uint8_t> out(expected);
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit(&zs) != Z_OK) throw Error("PNG_DECODE", "zlib init failed");
  zs.next_in = const_cast<Bytef*>(src.data());
  zs.avail_in = static_cast<uInt>(src.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != expected) {
    throw Error("PNG_DECODE", "PNG image data is corrupt");
  }
  return out;
}

int paeth(int a, int b, int c) {
  int p = a + b - c;
  int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

RasterImage make_image(int width, int height) {
  if (width <= 0 || height <= 0) throw Error("BAD_IMAGE", "image dimensions must be positive");
  RasterImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<size_t>(width) * height * 4, 0);
  return img;
}

std::vector<std::uint8_t> png_encode(const RasterImage& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<size_t>(image.width) * image.height * 4) {
    throw Error("PNG_ENCODE", "inconsistent raster dimensions");
  }
  std::vector<std::uint8_t> out(kPngMagic, kPngMagic + 8);

  std::vector<std::uint8_t> ihdr;
  put32be(ihdr, static_cast<std::uint32_t>(image.width));
  put32be(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(6);  // RGBA
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // no interlace
  write_chunk(out, "IHDR", ihdr);

  const size_t stride = static_cast<size_t>(image.width) * 4;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * image.height);
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);  // filter: none
    const std::uint8_t* row = image.pixels.data() + y * stride;
    raw.insert(raw.end(), row, row + stride);
  }
  write_chunk(out, "IDAT", zlib_compress(raw));
  write_chunk(out, "IEND", {});
  return out;
}

RasterImage png_decode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngMagic, 8) != 0) {
    throw Error("PNG_DECODE", "not a PNG file");
  }
  size_t pos = 8;
  int width = 0, height = 0, color_type = -1;
  std::vector<std::uint8_t> idat;
  while (pos + 8 <= bytes.size()) {
    std::uint32_t len = get32be(bytes.data() + pos);
    if (pos + 12 + len > bytes.size()) throw Error("PNG_DECODE", "truncated chunk");
    std::string type(reinterpret_cast<const char*>(bytes.data() + pos + 4), 4);
    const std::uint8_t* payload = bytes.data() + pos + 8;
    if (type == "IHDR") {
      if (len != 13) throw Error("PNG_DECODE", "bad IHDR");
      width = static_cast<int>(get32be(payload));
      height = static_cast<int>(get32be(payload + 4));
      int depth = payload[8];
      color_type = payload[9];
      if (depth != 8) throw Error("PNG_DECODE", "only 8-bit PNGs are supported");
      if (color_type != 0 && color_type != 2 && color_type != 4 && color_type != 6) {
        throw Error("PNG_DECODE", "unsupported PNG color type");
      }
      if (payload[12] != 0) throw Error("PNG_DECODE", "interlaced PNGs are not supported");
    } else if (type == "IDAT") {
      idat.insert(idat.end(), payload, payload + len);
    } else if (type == "IEND") {
      break;
    }
    pos += 12 + len;
  }
  if (width <= 0 || height <= 0 || color_type < 0) throw Error("PNG_DECODE", "missing IHDR");
  if (idat.empty()) throw Error("PNG_DECODE", "missing image data");

  const int channels = color_type == 0 ? 1 : color_type == 2 ? 3 : color_type == 4 ? 2 : 4;
  const size_t stride = static_cast<size_t>(width) * channels;
  std::vector<std::uint8_t> raw = zlib_decompress(idat, (stride + 1) * height);

  RasterImage img = make_image(width, height);
  std::vector<std::uint8_t> prev(stride, 0);
  std::vector<std::uint8_t> cur(stride, 0);
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* line = raw.data() + y * (stride + 1);
    int filter = line[0];
    const std::uint8_t* src = line + 1;
    for (size_t i = 0; i < stride; ++i) {
      int a = i >= static_cast<size_t>(channels) ? cur[i - channels] : 0;
      int b = prev[i];
      int c = i >= static_cast<size_t>(channels) ? prev[i - channels] : 0;
      int x = src[i];
      switch (filter) {
        case 0: cur[i] = static_cast<std::uint8_t>(x); break;
        case 1: cur[i] = static_cast<std::uint8_t>(x + a); break;
        case 2: cur[i] = static_cast<std::uint8_t>(x + b); break;
        case 3: cur[i] = static_cast<std::uint8_t>(x + (a + b) / 2); break;
        case 4: cur[i] = static_cast<std::uint8_t>(x + paeth(a, b, c)); break;
        default: throw Error("PNG_DECODE", "unknown filter type");
      }
    }
    for (int x = 0; x < width; ++x) {
      std::uint8_t* dst = img.px(x, y);
      const std::uint8_t* s = cur.data() + static_cast<size_t>(x) * channels;
      switch (color_type) {
        case 0: dst[0] = dst[1] = dst[2] = s[0]; dst[3] = 255; break;
        case 2: dst[0] = s[0]; dst[1] = s[1]; dst[2] = s[2]; dst[3] = 255; break;
        case 4: dst[0] = dst[1] = dst[2] = s[0]; dst[3] = s[1]; break;
        case 6: std::memcpy(dst, s, 4); break;
      }
    }
    std::swap(prev, cur);
  }
  return img;
}

std::vector<RasterImage> slice_grid(const RasterImage& image, int m, int n) {
  if (m < 1 || n < 1) throw Error("BAD_GRID", "grid dimensions must be >= 1");
  if (m > image.height || n > image.width) {
    throw Error("BAD_GRID", "grid " + std::to_string(m) + "x" + std::to_string(n) +
                                " exceeds image " + std::to_string(image.height) + "x" +
                                std::to_string(image.width));
  }
  std::vector<RasterImage> tiles;
  tiles.reserve(static_cast<size_t>(m) * n);
  for (int r = 0; r < m; ++r) {
    int y0 = static_cast<int>(static_cast<std::int64_t>(r) * image.height / m);
    int y1 = static_cast<int>(static_cast<std::int64_t>(r + 1) * image.height / m);
    for (int c = 0; c < n; ++c) {
      int x0 = static_cast<int>(static_cast<std::int64_t>(c) * image.width / n);
      int x1 = static_cast<int>(static_cast<std::int64_t>(c + 1) * image.width / n);
      RasterImage tile = make_image(x1 - x0, y1 - y0);
      for (int y = y0; y < y1; ++y) {
        std::memcpy(tile.px(0, y - y0), image.px(x0, y), static_cast<size_t>(x1 - x0) * 4);
      }
      tiles.push_back(std::move(tile));
    }
  }
  return tiles;
}

RasterImage remove_background(const RasterImage& image, int threshold, int chroma_window) {
  if (threshold < 0 || threshold > 255) throw Error("BAD_THRESHOLD", "threshold must be in [0, 255]");
  RasterImage out = image;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      std::uint8_t* p = out.px(x, y);
      int lo = std::min({p[0], p[1], p[2]});
      int hi = std::max({p[0], p[1], p[2]});
      if (lo >= threshold && hi - lo <= chroma_window) p[3] = 0;
    }
  }
  return out;
}

RasterImage trim_transparent(const RasterImage& image) {
  int x0 = image.width, y0 = image.height, x1 = -1, y1 = -1;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (image.px(x, y)[3] > 0) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) return make_image(1, 1);  // fully transparent
  RasterImage out = make_image(x1 - x0 + 1, y1 - y0 + 1);
  for (int y = y0; y <= y1; ++y) {
    std::memcpy(out.px(0, y - y0), image.px(x0, y), static_cast<size_t>(out.width) * 4);
  }
  return out;
}

}  // namespace figforge::assets
