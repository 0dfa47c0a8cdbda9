#include "collage/image.hpp"

#include <cstring>
#include <stdexcept>

namespace collage {

Image make_solid(int w, int h, Rgb c) {
  Image img(w, h, 3);
  for (int y = 0; y < h; ++y) {
    uint8_t* p = img.row(y);
    for (int x = 0; x < w; ++x) {
      p[0] = c.r;
      p[1] = c.g;
      p[2] = c.b;
      p += 3;
    }
  }
  return img;
}

bool images_equal(const Image& a, const Image& b) {
  return a.same_shape(b) &&
         (a.data.empty() ||
          std::memcmp(a.data.data(), b.data.data(), a.data.size()) == 0);
}

int64_t count_diff_pixels(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("count_diff_pixels: shape mismatch");
  int64_t n = 0;
  const int c = a.channels;
  const uint8_t* pa = a.data.data();
  const uint8_t* pb = b.data.data();
  const size_t total = static_cast<size_t>(a.width) * a.height;
  for (size_t i = 0; i < total; ++i) {
    if (std::memcmp(pa, pb, c) != 0) ++n;
    pa += c;
    pb += c;
  }
  return n;
}

Image expand_to_rgb(const Image& src) {
  if (src.channels == 3) return src;
  Image out(src.width, src.height, 3);
  for (int y = 0; y < src.height; ++y) {
    const uint8_t* s = src.row(y);
    uint8_t* d = out.row(y);
    for (int x = 0; x < src.width; ++x) {
      if (src.channels == 1) {
        d[0] = d[1] = d[2] = s[0];
      } else {
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
      }
      s += src.channels;
      d += 3;
    }
  }
  return out;
}

double mask_fraction(const Image& mask) {
  if (mask.channels != 1 || mask.empty()) throw std::invalid_argument("mask_fraction: want 1-channel mask");
  int64_t on = 0;
  for (uint8_t v : mask.data)
    if (v) ++on;
  return static_cast<double>(on) / static_cast<double>(mask.data.size());
}

}  // namespace collage
