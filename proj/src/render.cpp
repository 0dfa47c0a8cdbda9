#include "collage/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "collage/detail/resample.hpp"

namespace collage {

void rotation_cos_sin(double radians, double& c, double& s) {
  c = std::cos(radians);
  s = std::sin(radians);
  auto snap = [](double& v) {
    for (double target : {0.0, 1.0, -1.0})
      if (std::abs(v - target) < 1e-9) v = target;
  };
  snap(c);
  snap(s);
}

Image transform_asset(const Image& rgba, double scale, double rotation) {
  if (rgba.channels != 4 || rgba.empty())
    throw std::invalid_argument("transform_asset: want a non-empty RGBA image");
  const detail::TransformFrame f =
      detail::transform_frame(rgba.width, rgba.height, scale, rotation);
  Image out(f.out_w, f.out_h, 4);
#pragma omp parallel for schedule(static)
  for (int oy = 0; oy < out.height; ++oy) {
    uint8_t* dst = out.row(oy);
    for (int ox = 0; ox < out.width; ++ox, dst += 4)
      detail::sample_transformed(rgba, f, ox, oy, dst);
  }
  return out;
}

Image resize_bilinear(const Image& img, int out_w, int out_h) {
  if (img.empty() || out_w < 1 || out_h < 1)
    throw std::invalid_argument("resize_bilinear: bad arguments");
  if (out_w == img.width && out_h == img.height) return img;
  Image out(out_w, out_h, img.channels);
  const int c = img.channels;
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
#pragma omp parallel for schedule(static)
  for (int oy = 0; oy < out_h; ++oy) {
    uint8_t* dst = out.row(oy);
    const double qy = (oy + 0.5) * sy - 0.5;
    const double fy0 = std::floor(qy);
    const double ty = qy - fy0;
    const int y0 = std::clamp(static_cast<int>(fy0), 0, img.height - 1);
    const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, img.height - 1);
    for (int ox = 0; ox < out_w; ++ox, dst += c) {
      const double qx = (ox + 0.5) * sx - 0.5;
      const double fx0 = std::floor(qx);
      const double tx = qx - fx0;
      const int x0 = std::clamp(static_cast<int>(fx0), 0, img.width - 1);
      const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, img.width - 1);
      const uint8_t* p00 = img.px(x0, y0);
      const uint8_t* p10 = img.px(x1, y0);
      const uint8_t* p01 = img.px(x0, y1);
      const uint8_t* p11 = img.px(x1, y1);
      for (int k = 0; k < c; ++k) {
        const double top = p00[k] + (p10[k] - p00[k]) * tx;
        const double bot = p01[k] + (p11[k] - p01[k]) * tx;
        dst[k] = detail::quant8(top + (bot - top) * ty);
      }
    }
  }
  return out;
}

void BackgroundCache::prepare(const AssetCatalog& catalog, int w, int h) {
  for (const auto& id : catalog.ids(AssetKind::Background)) {
    std::string key = id + "@" + std::to_string(w) + "x" + std::to_string(h);
    if (cache_.count(key)) continue;
    cache_.emplace(key, resize_bilinear(expand_to_rgb(catalog.at(id).pixels), w, h));
  }
}

const Image* BackgroundCache::find(const std::string& id, int w, int h) const {
  auto it = cache_.find(id + "@" + std::to_string(w) + "x" + std::to_string(h));
  return it == cache_.end() ? nullptr : &it->second;
}

namespace {

Image scene_background(const Scene& scene, const AssetCatalog& catalog,
                       const BackgroundCache* bg_cache) {
  if (const Rgb* solid = std::get_if<Rgb>(&scene.background))
    return make_solid(scene.width, scene.height, *solid);
  const std::string& id = std::get<std::string>(scene.background);
  if (bg_cache)
    if (const Image* cached = bg_cache->find(id, scene.width, scene.height)) return *cached;
  return resize_bilinear(expand_to_rgb(catalog.at(id).pixels), scene.width, scene.height);
}

PlacedLayer place_layer(const Placement& p, const Asset& asset) {
  PlacedLayer layer;
  layer.raster = transform_asset(asset.pixels, p.scale, p.rotation);
  layer.x0 = static_cast<int>(std::lround(p.cx - layer.raster.width * 0.5));
  layer.y0 = static_cast<int>(std::lround(p.cy - layer.raster.height * 0.5));
  return layer;
}

void fill_owner(SceneRaster& sr) {
  sr.owner.assign(static_cast<size_t>(sr.width) * sr.height, -1);
  for (size_t i = 0; i < sr.layers.size(); ++i) {
    const PlacedLayer& L = sr.layers[i];
    const int xb = std::max(0, L.x0), xe = std::min(sr.width, L.x0 + L.raster.width);
    const int yb = std::max(0, L.y0), ye = std::min(sr.height, L.y0 + L.raster.height);
    for (int y = yb; y < ye; ++y) {
      const uint8_t* ap = L.raster.px(xb - L.x0, y - L.y0) + 3;
      int32_t* op = sr.owner.data() + static_cast<size_t>(y) * sr.width + xb;
      for (int x = xb; x < xe; ++x, ap += 4, ++op)
        if (*ap >= 128) *op = static_cast<int32_t>(i);
    }
  }
}

}  // namespace

SceneRaster rasterize_scene(const Scene& scene, const AssetCatalog& catalog,
                            const BackgroundCache* bg_cache) {
  if (scene.width < 1 || scene.height < 1)
    throw std::invalid_argument("rasterize_scene: empty canvas");
  SceneRaster sr;
  sr.width = scene.width;
  sr.height = scene.height;
  sr.background = scene_background(scene, catalog, bg_cache);
  sr.layers.reserve(scene.placements.size());
  for (const Placement& p : scene.placements)
    sr.layers.push_back(place_layer(p, catalog.at(p.asset_id)));
  fill_owner(sr);
  return sr;
}

Image composite(const SceneRaster& sr) {
  Image out = sr.background;
  for (const PlacedLayer& L : sr.layers) {
    const int xb = std::max(0, L.x0), xe = std::min(sr.width, L.x0 + L.raster.width);
    const int yb = std::max(0, L.y0), ye = std::min(sr.height, L.y0 + L.raster.height);
    if (xb >= xe || yb >= ye) continue;
#pragma omp parallel for schedule(static)
    for (int y = yb; y < ye; ++y) {
      uint8_t* dst = out.px(xb, y);
      const uint8_t* src = L.raster.px(xb - L.x0, y - L.y0);
      for (int x = xb; x < xe; ++x, dst += 3, src += 4) detail::over_px(dst, src);
    }
  }
  return out;
}

Image composite(const Scene& scene, const AssetCatalog& catalog,
                const BackgroundCache* bg_cache) {
  return composite(rasterize_scene(scene, catalog, bg_cache));
}

Image visible_mask(const SceneRaster& sr, size_t index) {
  if (index >= sr.layers.size())
    throw std::out_of_range("visible_mask: placement index out of range");
  Image out(sr.width, sr.height, 1, 0);
  const auto want = static_cast<int32_t>(index);
  const size_t n = sr.owner.size();
  for (size_t i = 0; i < n; ++i)
    if (sr.owner[i] == want) out.data[i] = 255;
  return out;
}

Image visible_mask(const Scene& scene, const AssetCatalog& catalog, size_t index) {
  return visible_mask(rasterize_scene(scene, catalog), index);
}

BBox layer_support(const PlacedLayer& L, int canvas_w, int canvas_h) {
  const int xb = std::max(0, L.x0), xe = std::min(canvas_w, L.x0 + L.raster.width);
  const int yb = std::max(0, L.y0), ye = std::min(canvas_h, L.y0 + L.raster.height);
  BBox box{canvas_w, canvas_h, 0, 0};
  for (int y = yb; y < ye; ++y) {
    const uint8_t* ap = L.raster.px(xb - L.x0, y - L.y0) + 3;
    for (int x = xb; x < xe; ++x, ap += 4) {
      if (*ap == 0) continue;
      box.x0 = std::min(box.x0, x);
      box.x1 = std::max(box.x1, x + 1);
      box.y0 = std::min(box.y0, y);
      box.y1 = std::max(box.y1, y + 1);
    }
  }
  if (box.x1 <= box.x0) return {};
  return box;
}

}  // namespace collage
