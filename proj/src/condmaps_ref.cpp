#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "collage/condmaps.hpp"

// Serial reference implementations: same pinned arithmetic, different
// traversal (column-major where it matters) and a DFS hysteresis walk.

namespace collage::ref {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

Image canny(const Image& rgb, double low, double high) {
  if (rgb.channels != 3 || rgb.width < 3 || rgb.height < 3)
    throw std::invalid_argument("canny: want RGB at least 3x3");
  const int w = rgb.width, h = rgb.height;

  double k[5];
  double ksum = 0;
  for (int i = 0; i < 5; ++i) {
    k[i] = std::exp(-(i - 2) * (i - 2) / (2.0 * 1.4 * 1.4));
    ksum += k[i];
  }
  for (double& v : k) v /= ksum;

  std::vector<double> gray(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const uint8_t* p = rgb.px(x, y);
      gray[static_cast<size_t>(y) * w + x] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }

  std::vector<double> tmp(gray.size()), blur(gray.size());
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i)
        acc += k[i + 2] * gray[static_cast<size_t>(y) * w + clampi(x + i, 0, w - 1)];
      tmp[static_cast<size_t>(y) * w + x] = acc;
    }
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i)
        acc += k[i + 2] * tmp[static_cast<size_t>(clampi(y + i, 0, h - 1)) * w + x];
      blur[static_cast<size_t>(y) * w + x] = acc;
    }

  std::vector<double> gx(gray.size()), gy(gray.size()), mag(gray.size());
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      const int ym = clampi(y - 1, 0, h - 1), yp = clampi(y + 1, 0, h - 1);
      const int xm = clampi(x - 1, 0, w - 1), xp = clampi(x + 1, 0, w - 1);
      auto B = [&](int yy, int xx) { return blur[static_cast<size_t>(yy) * w + xx]; };
      const double dx = (B(ym, xp) + 2 * B(y, xp) + B(yp, xp)) -
                        (B(ym, xm) + 2 * B(y, xm) + B(yp, xm));
      const double dy = (B(yp, xm) + 2 * B(yp, x) + B(yp, xp)) -
                        (B(ym, xm) + 2 * B(ym, x) + B(ym, xp));
      const size_t i = static_cast<size_t>(y) * w + x;
      gx[i] = dx;
      gy[i] = dy;
      mag[i] = std::hypot(dx, dy) / 4.0;
    }

  constexpr double kTan22 = 0.4142135623730951;
  constexpr double kTan67 = 2.414213562373095;
  std::vector<uint8_t> cls(gray.size(), 0);
  for (int x = 1; x < w - 1; ++x)
    for (int y = 1; y < h - 1; ++y) {
      const size_t i = static_cast<size_t>(y) * w + x;
      const double m = mag[i];
      if (m <= low) continue;
      const double ax = std::abs(gx[i]), ay = std::abs(gy[i]);
      double n1, n2;
      if (ay < ax * kTan22) {
        n1 = mag[i - 1];
        n2 = mag[i + 1];
      } else if (ay > ax * kTan67) {
        n1 = mag[i - w];
        n2 = mag[i + w];
      } else if ((gx[i] > 0) == (gy[i] > 0)) {
        n1 = mag[i - w - 1];
        n2 = mag[i + w + 1];
      } else {
        n1 = mag[i - w + 1];
        n2 = mag[i + w - 1];
      }
      if (m > n1 && m >= n2) cls[i] = m > high ? 2 : 1;
    }

  Image out(w, h, 1, 0);
  std::vector<size_t> stack;
  for (size_t i = 0; i < cls.size(); ++i)
    if (cls[i] == 2 && !out.data[i]) {
      out.data[i] = 255;
      stack.push_back(i);
      while (!stack.empty()) {
        const size_t cur = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(cur % w), y = static_cast<int>(cur / w);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (!dx && !dy) continue;
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const size_t j = static_cast<size_t>(ny) * w + nx;
            if (cls[j] == 1 && !out.data[j]) {
              out.data[j] = 255;
              stack.push_back(j);
            }
          }
      }
    }
  return out;
}

Image depth_map(const Scene& scene, const AssetCatalog& catalog) {
  SceneRaster sr = rasterize_scene(scene, catalog);
  Image out(sr.width, sr.height, 1, 0);
  const int L = static_cast<int>(sr.layers.size());
  if (L == 0) return out;
  for (int y = 0; y < sr.height; ++y)
    for (int x = 0; x < sr.width; ++x) {
      int topmost = -1;
      for (int i = 0; i < L; ++i) {
        const PlacedLayer& layer = sr.layers[i];
        const int lx = x - layer.x0, ly = y - layer.y0;
        if (lx < 0 || ly < 0 || lx >= layer.raster.width || ly >= layer.raster.height)
          continue;
        if (layer.raster.px(lx, ly)[3] >= 128) topmost = i;
      }
      if (topmost >= 0)
        out.px(x, y)[0] = static_cast<uint8_t>(std::lround(255.0 * (topmost + 1) / L));
    }
  return out;
}

}  // namespace collage::ref
