#pragma once

// Pinned resampling arithmetic shared by the parallel kernels and the serial
// reference implementations. Any change here changes dataset bytes.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collage/image.hpp"
#include "collage/render.hpp"

namespace collage::detail {

constexpr int kMaxRasterSide = 8192;
constexpr double kScaleMin = 0.05;
constexpr double kScaleMax = 4.0;

inline uint8_t quant8(double v) {
  long r = std::lround(v);
  return static_cast<uint8_t>(std::clamp(r, 0L, 255L));
}

struct TransformFrame {
  double c = 1, s = 0;  // forward rotation
  double scale = 1;
  int out_w = 0, out_h = 0;
};

inline TransformFrame transform_frame(int src_w, int src_h, double scale, double rotation) {
  if (!(scale >= kScaleMin && scale <= kScaleMax))
    throw std::invalid_argument("transform_asset: scale outside [0.05, 4]");
  TransformFrame f;
  rotation_cos_sin(rotation, f.c, f.s);
  f.scale = scale;
  const double hw = src_w * 0.5, hh = src_h * 0.5;
  const double hx = scale * (std::abs(f.c) * hw + std::abs(f.s) * hh);
  const double hy = scale * (std::abs(f.s) * hw + std::abs(f.c) * hh);
  // ceil with a hair of slack so exact integer extents stay exact
  f.out_w = std::max(1, static_cast<int>(std::ceil(2.0 * hx - 1e-7)));
  f.out_h = std::max(1, static_cast<int>(std::ceil(2.0 * hy - 1e-7)));
  if (f.out_w > kMaxRasterSide || f.out_h > kMaxRasterSide)
    throw std::invalid_argument("transform_asset: output raster exceeds 8192 px");
  return f;
}

// Bilinear tap in premultiplied alpha; texels outside the source contribute
// nothing, so alpha falls to zero past the support.
inline void sample_transformed(const Image& src, const TransformFrame& f,
                               int ox, int oy, uint8_t out[4]) {
  const int w = src.width, h = src.height;
  const double px = ox + 0.5 - f.out_w * 0.5;
  const double py = oy + 0.5 - f.out_h * 0.5;
  const double qx = (f.c * px + f.s * py) / f.scale + w * 0.5 - 0.5;
  const double qy = (-f.s * px + f.c * py) / f.scale + h * 0.5 - 0.5;
  const double fx0 = std::floor(qx), fy0 = std::floor(qy);
  const int x0 = static_cast<int>(fx0), y0 = static_cast<int>(fy0);
  const double tx = qx - fx0, ty = qy - fy0;
  double acc[4] = {0, 0, 0, 0};
  for (int dy = 0; dy < 2; ++dy) {
    const int sy = y0 + dy;
    if (sy < 0 || sy >= h) continue;
    const double wy = dy ? ty : 1.0 - ty;
    if (wy == 0.0) continue;
    for (int dx = 0; dx < 2; ++dx) {
      const int sx = x0 + dx;
      if (sx < 0 || sx >= w) continue;
      const double wgt = wy * (dx ? tx : 1.0 - tx);
      if (wgt == 0.0) continue;
      const uint8_t* sp = src.px(sx, sy);
      const double a = sp[3];
      acc[0] += wgt * sp[0] * a;
      acc[1] += wgt * sp[1] * a;
      acc[2] += wgt * sp[2] * a;
      acc[3] += wgt * a;
    }
  }
  if (acc[3] > 1e-9) {
    out[0] = quant8(acc[0] / acc[3]);
    out[1] = quant8(acc[1] / acc[3]);
    out[2] = quant8(acc[2] / acc[3]);
    out[3] = quant8(acc[3]);
  } else {
    out[0] = out[1] = out[2] = out[3] = 0;
  }
}

// src-over in 8-bit, rounding half away from zero.
inline void over_px(uint8_t* dst3, const uint8_t* src4) {
  const int a = src4[3];
  if (a == 0) return;
  if (a == 255) {
    dst3[0] = src4[0];
    dst3[1] = src4[1];
    dst3[2] = src4[2];
    return;
  }
  const int ia = 255 - a;
  dst3[0] = static_cast<uint8_t>((src4[0] * a + dst3[0] * ia + 127) / 255);
  dst3[1] = static_cast<uint8_t>((src4[1] * a + dst3[1] * ia + 127) / 255);
  dst3[2] = static_cast<uint8_t>((src4[2] * a + dst3[2] * ia + 127) / 255);
}

}  // namespace collage::detail
