#pragma once

#include <string>
#include <variant>
#include <vector>

#include "collage/assets.hpp"
#include "collage/image.hpp"
#include "collage/rng.hpp"

namespace collage {

// Half-open pixel box [x0,x1) x [y0,y1).
struct BBox {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  int64_t area() const { return int64_t(width()) * height(); }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool operator==(const BBox&) const = default;
};

BBox intersect(const BBox& a, const BBox& b);
double iou(const BBox& a, const BBox& b);
// Intersection over the smaller box's area; 0 if either is empty.
double iom(const BBox& a, const BBox& b);

struct Placement {
  std::string asset_id;
  double cx = 0, cy = 0;  // centre in canvas coordinates
  double scale = 1.0;
  double rotation = 0.0;  // radians, counter-clockwise
  int z = 0;
};

struct Scene {
  int width = 0, height = 0;
  std::variant<Rgb, std::string> background;  // solid colour or background asset id
  std::vector<Placement> placements;          // ascending z
};

enum class SpatialRelation { LeftOf, RightOf, Above, Below, Overlapping, Near };
const char* relation_phrase(SpatialRelation r);  // "to the left of", ...

// Tight axis-aligned pixel bounds of the placement's matte (alpha >= 128),
// computed from the transformed geometry of the opaque source pixels and
// clipped to the canvas. Throws if nothing lands on the canvas.
BBox bbox_of(const Placement& p, const Asset& asset, int canvas_w, int canvas_h);

// Same box before clipping; may extend outside the canvas.
BBox bbox_of_unclipped(const Placement& p, const Asset& asset);

// Relation of box a to box b on a canvas: Overlapping when the mutual
// overlap is significant, a directional relation when the centre offset
// clearly favours one axis, Near otherwise.
SpatialRelation spatial_relation(const BBox& a, const BBox& b, int canvas_w, int canvas_h);

enum class OverlapPolicy {
  Allow,           // anything goes
  NonOverlapping,  // pairwise IoM of matte boxes must stay at 0
  DisjointGap,     // boxes separated by at least gap_px on one axis
};

struct SceneParams {
  int width = 512, height = 512;
  int count_min = 1, count_max = 4;
  OverlapPolicy policy = OverlapPolicy::NonOverlapping;
  int gap_px = 4;
  double size_min = 0.22, size_max = 0.48;  // object max dimension / min canvas dimension
  double rot_min = 0.0, rot_max = 0.0;
  bool catalog_background = true;  // otherwise solid_background
  Rgb solid_background{240, 240, 240};
  std::vector<std::string> sticker_pool;  // empty: every sticker in the catalog
  int max_place_attempts = 60;
};

// Draws object count, picks stickers, sizes and positions them subject to
// the overlap policy (placements that keep violating it after
// max_place_attempts are dropped), assigns z ascending in placement order.
Scene sample_scene(Rng& rng, const AssetCatalog& catalog, const SceneParams& params);

}  // namespace collage
