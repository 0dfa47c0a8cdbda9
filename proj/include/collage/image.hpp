#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace collage {

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// Interleaved 8-bit raster; channels is 1 (gray/mask), 3 (RGB) or 4 (RGBA).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, uint8_t fill = 0)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {}

  bool empty() const { return data.empty(); }
  size_t stride() const { return static_cast<size_t>(width) * channels; }

  uint8_t* row(int y) { return data.data() + static_cast<size_t>(y) * stride(); }
  const uint8_t* row(int y) const {
    return data.data() + static_cast<size_t>(y) * stride();
  }
  uint8_t* px(int x, int y) { return row(y) + static_cast<size_t>(x) * channels; }
  const uint8_t* px(int x, int y) const {
    return row(y) + static_cast<size_t>(x) * channels;
  }
  uint8_t at(int x, int y, int c = 0) const { return px(x, y)[c]; }

  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
};

Image make_solid(int w, int h, Rgb c);
bool images_equal(const Image& a, const Image& b);

// Number of pixel positions whose values differ in any channel. Shapes must match.
int64_t count_diff_pixels(const Image& a, const Image& b);

// Gray -> replicate, RGB -> copy, RGBA -> drop alpha (no blending).
Image expand_to_rgb(const Image& src);

// Fraction of mask pixels that are nonzero.
double mask_fraction(const Image& mask);

}  // namespace collage
