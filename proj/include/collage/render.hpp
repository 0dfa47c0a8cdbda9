#pragma once

#include <map>
#include <memory>

#include "collage/scene.hpp"

namespace collage {

// Rotation about the image centre (counter-clockwise) after uniform scaling,
// resampled bilinearly in premultiplied alpha. Output raster is the tight
// integer bound of the transformed extent; pixels outside the source map to
// alpha 0. scale=1, rotation=0 returns a bit-identical copy. Throws if the
// output would exceed 8192 px on a side or scale is outside [0.05, 4].
Image transform_asset(const Image& rgba, double scale, double rotation);

Image resize_bilinear(const Image& img, int out_w, int out_h);

// cos/sin with values within 1e-9 of {0, +1, -1} snapped exactly, so
// quarter-turn geometry is exact.
void rotation_cos_sin(double radians, double& c, double& s);

struct PlacedLayer {
  Image raster;  // transformed RGBA
  int x0 = 0, y0 = 0;  // top-left on canvas
};

// Scene expanded to per-layer rasters plus the per-pixel owner map
// (index of the topmost placement whose matte covers the pixel, -1 for
// background).
struct SceneRaster {
  int width = 0, height = 0;
  Image background;  // RGB at canvas size
  std::vector<PlacedLayer> layers;
  std::vector<int32_t> owner;
};

// Cache of catalog backgrounds resized to canvas sizes; read-only during
// generation so it is safe to share across worker threads.
class BackgroundCache {
 public:
  void prepare(const AssetCatalog& catalog, int w, int h);
  const Image* find(const std::string& id, int w, int h) const;

 private:
  std::map<std::string, Image> cache_;
};

SceneRaster rasterize_scene(const Scene& scene, const AssetCatalog& catalog,
                            const BackgroundCache* bg_cache = nullptr);

// Back-to-front alpha compositing over the background, integer arithmetic,
// rounding half away from zero.
Image composite(const SceneRaster& raster);
Image composite(const Scene& scene, const AssetCatalog& catalog,
                const BackgroundCache* bg_cache = nullptr);

// 255 where placement `index` is the topmost matte owner, 0 elsewhere.
Image visible_mask(const SceneRaster& raster, size_t index);
Image visible_mask(const Scene& scene, const AssetCatalog& catalog, size_t index);

// Tight bbox of nonzero alpha in a placed layer, in canvas coordinates,
// clipped; empty box if nothing visible.
BBox layer_support(const PlacedLayer& layer, int canvas_w, int canvas_h);

namespace ref {
// Serial reference implementations kept for correctness tests and benchmarks.
Image transform_asset(const Image& rgba, double scale, double rotation);
Image composite(const Scene& scene, const AssetCatalog& catalog);
Image visible_mask(const Scene& scene, const AssetCatalog& catalog, size_t index);
}  // namespace ref

}  // namespace collage
