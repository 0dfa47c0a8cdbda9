#include "collage/condmaps.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>

namespace collage {

const std::array<Rgb, 32> kSegPalette = {{
    {0, 0, 0},        // background
    {0, 0, 128},      {0, 0, 255},      {0, 128, 0},     {0, 128, 128},
    {0, 128, 255},    {0, 255, 0},      {0, 255, 128},   {0, 255, 255},
    {128, 0, 0},      {128, 0, 128},    {128, 0, 255},   {128, 128, 0},
    {128, 128, 128},  {128, 128, 255},  {128, 255, 0},   {128, 255, 128},
    {128, 255, 255},  {255, 0, 0},      {255, 0, 128},   {255, 0, 255},
    {255, 128, 0},    {255, 128, 128},  {255, 128, 255}, {255, 255, 0},
    {255, 255, 128},  {255, 255, 255},  {64, 64, 64},    {192, 192, 192},
    {64, 0, 192},     {192, 64, 0},     {0, 192, 64},
}};

const char* mask_kind_name(MaskKind k) {
  switch (k) {
    case MaskKind::Smear: return "smear";
    case MaskKind::Block: return "block";
    case MaskKind::Edge: return "edge";
  }
  return "smear";
}

namespace {

constexpr double kGaussSigma = 1.4;

std::array<double, 5> gauss_kernel() {
  std::array<double, 5> k{};
  double sum = 0;
  for (int i = 0; i < 5; ++i) {
    k[i] = std::exp(-(i - 2) * (i - 2) / (2.0 * kGaussSigma * kGaussSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

Image canny(const Image& rgb, double low, double high) {
  if (rgb.channels != 3 || rgb.width < 3 || rgb.height < 3)
    throw std::invalid_argument("canny: want RGB at least 3x3");
  const int w = rgb.width, h = rgb.height;
  const auto k = gauss_kernel();

  std::vector<double> gray(static_cast<size_t>(w) * h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const uint8_t* p = rgb.row(y);
    double* g = gray.data() + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x, p += 3)
      g[x] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
  }

  // separable 5-tap blur, replicated borders
  std::vector<double> tmp(gray.size()), blur(gray.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const double* g = gray.data() + static_cast<size_t>(y) * w;
    double* t = tmp.data() + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i) acc += k[i + 2] * g[clampi(x + i, 0, w - 1)];
      t[x] = acc;
    }
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    double* b = blur.data() + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i)
        acc += k[i + 2] * tmp[static_cast<size_t>(clampi(y + i, 0, h - 1)) * w + x];
      b[x] = acc;
    }
  }

  std::vector<double> gx(gray.size()), gy(gray.size()), mag(gray.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const int ym = clampi(y - 1, 0, h - 1), yp = clampi(y + 1, 0, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = clampi(x - 1, 0, w - 1), xp = clampi(x + 1, 0, w - 1);
      auto B = [&](int yy, int xx) { return blur[static_cast<size_t>(yy) * w + xx]; };
      const double dx = (B(ym, xp) + 2 * B(y, xp) + B(yp, xp)) -
                        (B(ym, xm) + 2 * B(y, xm) + B(yp, xm));
      const double dy = (B(yp, xm) + 2 * B(yp, x) + B(yp, xp)) -
                        (B(ym, xm) + 2 * B(ym, x) + B(ym, xp));
      const size_t i = static_cast<size_t>(y) * w + x;
      gx[i] = dx;
      gy[i] = dy;
      mag[i] = std::hypot(dx, dy) / 4.0;  // 0..255 scale
    }
  }

  // non-maximum suppression: 0 none, 1 weak candidate, 2 strong seed
  constexpr double kTan22 = 0.4142135623730951;
  constexpr double kTan67 = 2.414213562373095;
  std::vector<uint8_t> cls(gray.size(), 0);
#pragma omp parallel for schedule(static)
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
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
  }

  // hysteresis: connect weak candidates to strong seeds (8-neighbourhood)
  Image out(w, h, 1, 0);
  std::deque<size_t> queue;
  for (size_t i = 0; i < cls.size(); ++i)
    if (cls[i] == 2) {
      out.data[i] = 255;
      queue.push_back(i);
    }
  const int dx8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  const int dy8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  while (!queue.empty()) {
    const size_t i = queue.front();
    queue.pop_front();
    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
    for (int d = 0; d < 8; ++d) {
      const int nx = x + dx8[d], ny = y + dy8[d];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const size_t j = static_cast<size_t>(ny) * w + nx;
      if (cls[j] == 1 && !out.data[j]) {
        out.data[j] = 255;
        queue.push_back(j);
      }
    }
  }
  return out;
}

Image depth_map(const SceneRaster& sr) {
  Image out(sr.width, sr.height, 1, 0);
  const int L = static_cast<int>(sr.layers.size());
  if (L == 0) return out;
  std::array<uint8_t, 256> level{};
  for (int i = 0; i < L && i < 256; ++i)
    level[i] = static_cast<uint8_t>(std::lround(255.0 * (i + 1) / L));
  const size_t n = sr.owner.size();
  for (size_t i = 0; i < n; ++i) {
    const int32_t o = sr.owner[i];
    if (o >= 0) out.data[i] = level[o];
  }
  return out;
}

Image depth_map(const Scene& scene, const AssetCatalog& catalog) {
  return depth_map(rasterize_scene(scene, catalog));
}

Image seg_map(const SceneRaster& sr) {
  Image out(sr.width, sr.height, 3);
  const Rgb bg = kSegPalette[0];
  const size_t n = sr.owner.size();
  uint8_t* d = out.data.data();
  for (size_t i = 0; i < n; ++i, d += 3) {
    const int32_t o = sr.owner[i];
    const Rgb c = o < 0 ? bg : kSegPalette[1 + (o % 31)];
    d[0] = c.r;
    d[1] = c.g;
    d[2] = c.b;
  }
  return out;
}

Image seg_map(const Scene& scene, const AssetCatalog& catalog) {
  return seg_map(rasterize_scene(scene, catalog));
}

namespace {

void stamp_disk(Image& m, int cx, int cy, int r) {
  for (int dy = -r; dy <= r; ++dy) {
    const int y = cy + dy;
    if (y < 0 || y >= m.height) continue;
    const int span = static_cast<int>(std::floor(std::sqrt(double(r) * r - double(dy) * dy)));
    const int x0 = std::max(0, cx - span), x1 = std::min(m.width - 1, cx + span);
    if (x0 > x1) continue;
    std::memset(m.row(y) + x0, 255, static_cast<size_t>(x1 - x0 + 1));
  }
}

// Disks spaced at most r/2 apart along the segment, so the stroke stays
// 4-connected (each centre lies inside the previous disk).
void stamp_segment(Image& m, double x0, double y0, double x1, double y1, int r) {
  const double dist = std::hypot(x1 - x0, y1 - y0);
  const double spacing = std::max(1.0, 0.5 * r);
  const int n = std::max(1, static_cast<int>(std::ceil(dist / spacing)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    stamp_disk(m, static_cast<int>(std::lround(x0 + (x1 - x0) * t)),
               static_cast<int>(std::lround(y0 + (y1 - y0) * t)), r);
  }
}

Image smear_attempt(Rng& rng, int w, int h, const MaskGenParams& p) {
  Image m(w, h, 1, 0);
  const int strokes = static_cast<int>(rng.uniform_int(p.strokes_min, p.strokes_max));
  const double min_dim = std::min(w, h);
  for (int s = 0; s < strokes; ++s) {
    const int r = std::max(1, static_cast<int>(std::lround(
                                rng.uniform(p.radius_min, p.radius_max) * min_dim)));
    const int steps = static_cast<int>(rng.uniform_int(p.steps_min, p.steps_max));
    double x = rng.uniform(0, w), y = rng.uniform(0, h);
    double heading = rng.uniform(0, 2.0 * 3.14159265358979323846);
    const double step_len = std::max(1.0, 0.7 * r);
    for (int i = 0; i < steps; ++i) {
      heading += rng.uniform(-0.5, 0.5);
      const double nx = std::clamp(x + std::cos(heading) * step_len, 0.0, w - 1.0);
      const double ny = std::clamp(y + std::sin(heading) * step_len, 0.0, h - 1.0);
      stamp_segment(m, x, y, nx, ny, r);
      x = nx;
      y = ny;
    }
  }
  return m;
}

Image block_attempt(Rng& rng, int w, int h, const MaskGenParams& p) {
  Image m(w, h, 1, 0);
  const int blocks = static_cast<int>(rng.uniform_int(p.blocks_min, p.blocks_max));
  for (int b = 0; b < blocks; ++b) {
    const double area = rng.uniform(p.block_area_min, p.block_area_max) * w * h;
    const double aspect = rng.uniform(0.3, 3.0);
    int rw = clampi(static_cast<int>(std::lround(std::sqrt(area * aspect))), 2, w);
    int rh = clampi(static_cast<int>(std::lround(area / rw)), 2, h);
    const int x0 = static_cast<int>(rng.uniform_int(0, w - rw));
    const int y0 = static_cast<int>(rng.uniform_int(0, h - rh));
    for (int y = y0; y < y0 + rh; ++y) std::memset(m.row(y) + x0, 255, static_cast<size_t>(rw));
  }
  return m;
}

Image edge_mask(Rng& rng, int w, int h, const MaskGenParams& p) {
  Image m(w, h, 1, 0);
  int sides[4] = {0, 1, 2, 3};  // left, right, top, bottom
  const int count = static_cast<int>(rng.uniform_int(p.sides_min, p.sides_max));
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(4 - i)));
    std::swap(sides[i], sides[j]);
  }
  for (int i = 0; i < count; ++i) {
    const double frac = rng.uniform(p.band_min, p.band_max);
    switch (sides[i]) {
      case 0: {
        const int band = std::max(1, static_cast<int>(std::lround(frac * w)));
        for (int y = 0; y < h; ++y) std::memset(m.row(y), 255, static_cast<size_t>(band));
        break;
      }
      case 1: {
        const int band = std::max(1, static_cast<int>(std::lround(frac * w)));
        for (int y = 0; y < h; ++y)
          std::memset(m.row(y) + (w - band), 255, static_cast<size_t>(band));
        break;
      }
      case 2: {
        const int band = std::max(1, static_cast<int>(std::lround(frac * h)));
        for (int y = 0; y < band; ++y) std::memset(m.row(y), 255, static_cast<size_t>(w));
        break;
      }
      default: {
        const int band = std::max(1, static_cast<int>(std::lround(frac * h)));
        for (int y = h - band; y < h; ++y) std::memset(m.row(y), 255, static_cast<size_t>(w));
        break;
      }
    }
  }
  return m;
}

}  // namespace

Image gen_mask(MaskKind kind, Rng& rng, int w, int h, const MaskGenParams& p) {
  if (w < 8 || h < 8) throw std::invalid_argument("gen_mask: canvas too small");
  if (kind == MaskKind::Edge) return edge_mask(rng, w, h, p);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    Image m = kind == MaskKind::Smear ? smear_attempt(rng, w, h, p)
                                      : block_attempt(rng, w, h, p);
    const double f = mask_fraction(m);
    if (f >= p.coverage_min && f <= p.coverage_max) return m;
  }
  // deterministic fallback with coverage comfortably inside the band
  Image m(w, h, 1, 0);
  if (kind == MaskKind::Smear) {
    const int r = std::max(1, static_cast<int>(std::lround(0.05 * std::min(w, h))));
    stamp_segment(m, 0.25 * w, 0.5 * h, 0.75 * w, 0.5 * h, r);
  } else {
    const int rw = std::max(2, static_cast<int>(std::lround(0.40 * w)));
    const int rh = std::max(2, static_cast<int>(std::lround(0.30 * h)));
    const int x0 = (w - rw) / 2, y0 = (h - rh) / 2;
    for (int y = y0; y < y0 + rh; ++y) std::memset(m.row(y) + x0, 255, static_cast<size_t>(rw));
  }
  return m;
}

Image draw_bbox(const Image& rgb, const BBox& box, Rgb color, int thickness) {
  if (rgb.channels != 3) throw std::invalid_argument("draw_bbox: want RGB");
  if (thickness < 1) throw std::invalid_argument("draw_bbox: thickness must be >= 1");
  BBox c{std::max(box.x0, 0), std::max(box.y0, 0),
         std::min(box.x1, rgb.width), std::min(box.y1, rgb.height)};
  if (c.empty()) throw std::domain_error("draw_bbox: box misses the image");
  Image out = rgb;
  auto hline = [&](int y0, int y1) {
    for (int y = std::max(c.y0, y0); y < std::min(c.y1, y1); ++y) {
      uint8_t* p = out.px(c.x0, y);
      for (int x = c.x0; x < c.x1; ++x, p += 3) {
        p[0] = color.r;
        p[1] = color.g;
        p[2] = color.b;
      }
    }
  };
  auto vline = [&](int x0, int x1) {
    for (int y = c.y0; y < c.y1; ++y) {
      uint8_t* p = out.px(std::max(c.x0, x0), y);
      for (int x = std::max(c.x0, x0); x < std::min(c.x1, x1); ++x, p += 3) {
        p[0] = color.r;
        p[1] = color.g;
        p[2] = color.b;
      }
    }
  };
  hline(c.y0, c.y0 + thickness);
  hline(c.y1 - thickness, c.y1);
  vline(c.x0, c.x0 + thickness);
  vline(c.x1 - thickness, c.x1);
  return out;
}

Image color_highlight(const Image& rgb, const Image& mask, Rgb color, double opacity) {
  if (rgb.channels != 3 || mask.channels != 1 || rgb.width != mask.width ||
      rgb.height != mask.height)
    throw std::invalid_argument("color_highlight: want matching RGB and mask");
  if (!(opacity >= 0.0 && opacity <= 1.0))
    throw std::invalid_argument("color_highlight: opacity outside [0, 1]");
  Image out = rgb;
  const double cf[3] = {double(color.r), double(color.g), double(color.b)};
#pragma omp parallel for schedule(static)
  for (int y = 0; y < rgb.height; ++y) {
    uint8_t* p = out.row(y);
    const uint8_t* mrow = mask.row(y);
    for (int x = 0; x < rgb.width; ++x, p += 3) {
      if (!mrow[x]) continue;
      for (int kch = 0; kch < 3; ++kch)
        p[kch] = static_cast<uint8_t>(std::clamp(
            std::lround(p[kch] * (1.0 - opacity) + cf[kch] * opacity), 0L, 255L));
    }
  }
  return out;
}

}  // namespace collage
