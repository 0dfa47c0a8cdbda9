#pragma once

#include <array>

#include "collage/render.hpp"

namespace collage {

// Fixed 32-colour segmentation palette; entry 0 is the background colour.
extern const std::array<Rgb, 32> kSegPalette;

// Edge detector: grayscale, 5x5 Gaussian (sigma 1.4), 3x3 Sobel, gradient
// magnitude on the 0..255 scale, non-maximum suppression, then hysteresis
// with thresholds low=50, high=150. Output is 255 on edges, 0 elsewhere.
Image canny(const Image& rgb, double low = 50.0, double high = 150.0);

// Layer-order depth: background 0, placement k of L (bottom to top, 1-based)
// renders as round(255*k/L) wherever it owns the pixel.
Image depth_map(const SceneRaster& raster);
Image depth_map(const Scene& scene, const AssetCatalog& catalog);

// Owner map painted with kSegPalette, palette[1 + (k mod 31)] for placement
// k, palette[0] for background.
Image seg_map(const SceneRaster& raster);
Image seg_map(const Scene& scene, const AssetCatalog& catalog);

enum class MaskKind { Smear, Block, Edge };
const char* mask_kind_name(MaskKind k);

struct MaskGenParams {
  // Smear: random walk brush strokes.
  int strokes_min = 1, strokes_max = 5;
  double radius_min = 0.02, radius_max = 0.08;  // fraction of min(w, h)
  int steps_min = 20, steps_max = 200;
  // Block: axis-aligned rectangles.
  int blocks_min = 1, blocks_max = 4;
  double block_area_min = 0.02, block_area_max = 0.25;  // fraction of canvas
  // Edge: bands anchored to canvas sides.
  int sides_min = 1, sides_max = 4;
  double band_min = 0.10, band_max = 0.40;  // fraction of the crossed dimension
  // Coverage targets for Smear and Block.
  double coverage_min = 0.02, coverage_max = 0.60;
  int max_attempts = 100;
};

// Binary mask (0/255). Smear and Block resample until coverage lands in
// [coverage_min, coverage_max], falling back to a fixed minimal pattern
// after max_attempts. Edge bands never cover a full axis (at most 40% per
// side), so the centre always stays open.
Image gen_mask(MaskKind kind, Rng& rng, int w, int h, const MaskGenParams& params = {});

// Hollow rectangle of the given thickness, clipped to the image. Throws if
// the box misses the image entirely.
Image draw_bbox(const Image& rgb, const BBox& box, Rgb color, int thickness);

// Blend color into pixels where mask is nonzero: out = px*(1-opacity) + color*opacity,
// rounded half away from zero.
Image color_highlight(const Image& rgb, const Image& mask, Rgb color, double opacity);

namespace ref {
Image canny(const Image& rgb, double low = 50.0, double high = 150.0);
Image depth_map(const Scene& scene, const AssetCatalog& catalog);
}  // namespace ref

}  // namespace collage
