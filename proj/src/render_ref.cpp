#include <stdexcept>

#include "collage/detail/resample.hpp"
#include "collage/render.hpp"

// Serial reference implementations. These traverse pixels in a different
// order from the parallel kernels and blend per pixel instead of per layer;
// tests require bit-identical output from both.

namespace collage::ref {

Image transform_asset(const Image& rgba, double scale, double rotation) {
  if (rgba.channels != 4 || rgba.empty())
    throw std::invalid_argument("transform_asset: want a non-empty RGBA image");
  const detail::TransformFrame f =
      detail::transform_frame(rgba.width, rgba.height, scale, rotation);
  Image out(f.out_w, f.out_h, 4);
  for (int ox = 0; ox < out.width; ++ox)
    for (int oy = 0; oy < out.height; ++oy)
      detail::sample_transformed(rgba, f, ox, oy, out.px(ox, oy));
  return out;
}

Image composite(const Scene& scene, const AssetCatalog& catalog) {
  SceneRaster sr = rasterize_scene(scene, catalog);
  Image out(sr.width, sr.height, 3);
  for (int y = 0; y < sr.height; ++y) {
    for (int x = 0; x < sr.width; ++x) {
      uint8_t* d = out.px(x, y);
      const uint8_t* bg = sr.background.px(x, y);
      d[0] = bg[0];
      d[1] = bg[1];
      d[2] = bg[2];
      for (const PlacedLayer& L : sr.layers) {
        const int lx = x - L.x0, ly = y - L.y0;
        if (lx < 0 || ly < 0 || lx >= L.raster.width || ly >= L.raster.height) continue;
        detail::over_px(d, L.raster.px(lx, ly));
      }
    }
  }
  return out;
}

Image visible_mask(const Scene& scene, const AssetCatalog& catalog, size_t index) {
  SceneRaster sr = rasterize_scene(scene, catalog);
  if (index >= sr.layers.size())
    throw std::out_of_range("visible_mask: placement index out of range");
  Image out(sr.width, sr.height, 1, 0);
  for (int y = 0; y < sr.height; ++y) {
    for (int x = 0; x < sr.width; ++x) {
      int topmost = -1;
      for (size_t i = 0; i < sr.layers.size(); ++i) {
        const PlacedLayer& L = sr.layers[i];
        const int lx = x - L.x0, ly = y - L.y0;
        if (lx < 0 || ly < 0 || lx >= L.raster.width || ly >= L.raster.height) continue;
        if (L.raster.px(lx, ly)[3] >= 128) topmost = static_cast<int>(i);
      }
      if (topmost == static_cast<int>(index)) out.px(x, y)[0] = 255;
    }
  }
  return out;
}

}  // namespace collage::ref
