#include "collage/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collage/render.hpp"

namespace collage {

BBox intersect(const BBox& a, const BBox& b) {
  BBox r{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
         std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
  if (r.empty()) return {};
  return r;
}

double iou(const BBox& a, const BBox& b) {
  const int64_t inter = intersect(a, b).area();
  const int64_t uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

double iom(const BBox& a, const BBox& b) {
  if (a.empty() || b.empty()) return 0.0;
  const int64_t inter = intersect(a, b).area();
  const int64_t smaller = std::min(a.area(), b.area());
  return static_cast<double>(inter) / static_cast<double>(smaller);
}

const char* relation_phrase(SpatialRelation r) {
  switch (r) {
    case SpatialRelation::LeftOf: return "to the left of";
    case SpatialRelation::RightOf: return "to the right of";
    case SpatialRelation::Above: return "above";
    case SpatialRelation::Below: return "below";
    case SpatialRelation::Overlapping: return "overlapping";
    case SpatialRelation::Near: return "near";
  }
  return "near";
}

namespace {

struct RelExtents {
  double minx, maxx, miny, maxy;  // about the placement centre
};

// Extent of the matte (alpha >= 128) under scale+rotation about the centre.
// The hull of the opaque pixel squares is spanned by the per-column extreme
// pixels, so transforming their corners is enough.
RelExtents matte_extents(const Asset& asset, double scale, double rotation) {
  const Image& im = asset.pixels;
  if (im.channels != 4) throw std::invalid_argument("bbox_of: asset is not RGBA");
  double c, s;
  rotation_cos_sin(rotation, c, s);
  const double hw = im.width * 0.5, hh = im.height * 0.5;
  RelExtents e{1e300, -1e300, 1e300, -1e300};
  bool any = false;
  auto corner = [&](int px, int py) {
    const double rx = px - hw, ry = py - hh;
    const double wx = scale * (c * rx - s * ry);
    const double wy = scale * (s * rx + c * ry);
    e.minx = std::min(e.minx, wx);
    e.maxx = std::max(e.maxx, wx);
    e.miny = std::min(e.miny, wy);
    e.maxy = std::max(e.maxy, wy);
  };
  for (int x = 0; x < im.width; ++x) {
    int ymin = -1, ymax = -1;
    for (int y = 0; y < im.height; ++y) {
      if (im.px(x, y)[3] < 128) continue;
      if (ymin < 0) ymin = y;
      ymax = y;
    }
    if (ymin < 0) continue;
    any = true;
    for (int yy : {ymin, ymax}) {
      corner(x, yy);
      corner(x + 1, yy);
      corner(x, yy + 1);
      corner(x + 1, yy + 1);
    }
  }
  if (!any) throw std::invalid_argument("bbox_of: asset matte is empty");
  return e;
}

BBox box_from_extents(const Placement& p, const RelExtents& e) {
  BBox b;
  b.x0 = static_cast<int>(std::floor(p.cx + e.minx));
  b.y0 = static_cast<int>(std::floor(p.cy + e.miny));
  b.x1 = static_cast<int>(std::ceil(p.cx + e.maxx));
  b.y1 = static_cast<int>(std::ceil(p.cy + e.maxy));
  return b;
}

}  // namespace

BBox bbox_of_unclipped(const Placement& p, const Asset& asset) {
  return box_from_extents(p, matte_extents(asset, p.scale, p.rotation));
}

BBox bbox_of(const Placement& p, const Asset& asset, int canvas_w, int canvas_h) {
  BBox b = bbox_of_unclipped(p, asset);
  b.x0 = std::max(b.x0, 0);
  b.y0 = std::max(b.y0, 0);
  b.x1 = std::min(b.x1, canvas_w);
  b.y1 = std::min(b.y1, canvas_h);
  if (b.empty())
    throw std::domain_error("bbox_of: placement lands entirely off canvas");
  return b;
}

SpatialRelation spatial_relation(const BBox& a, const BBox& b, int canvas_w, int canvas_h) {
  if (canvas_w < 1 || canvas_h < 1)
    throw std::invalid_argument("spatial_relation: empty canvas");
  if (iom(a, b) > 0.05) return SpatialRelation::Overlapping;
  const double ox = ((a.x0 + a.x1) - (b.x0 + b.x1)) * 0.5;
  const double oy = ((a.y0 + a.y1) - (b.y0 + b.y1)) * 0.5;
  const double nx = std::abs(ox) / canvas_w;
  const double ny = std::abs(oy) / canvas_h;
  if (nx >= ny) {
    if (nx >= 0.05) return ox < 0 ? SpatialRelation::LeftOf : SpatialRelation::RightOf;
  } else {
    if (ny >= 0.05) return oy < 0 ? SpatialRelation::Above : SpatialRelation::Below;
  }
  return SpatialRelation::Near;
}

namespace {

BBox expand(const BBox& b, int px) {
  return {b.x0 - px, b.y0 - px, b.x1 + px, b.y1 + px};
}

bool placement_ok(const BBox& candidate, const std::vector<BBox>& accepted,
                  OverlapPolicy policy, int gap_px) {
  if (policy == OverlapPolicy::Allow) return true;
  for (const BBox& prev : accepted) {
    if (policy == OverlapPolicy::NonOverlapping) {
      if (!intersect(candidate, prev).empty()) return false;
    } else {
      if (!intersect(candidate, expand(prev, gap_px)).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Scene sample_scene(Rng& rng, const AssetCatalog& catalog, const SceneParams& params) {
  if (params.width < 8 || params.height < 8)
    throw std::invalid_argument("sample_scene: canvas too small");
  const std::vector<std::string>& pool = params.sticker_pool.empty()
                                             ? catalog.ids(AssetKind::Sticker)
                                             : params.sticker_pool;
  if (pool.empty()) throw std::invalid_argument("sample_scene: no stickers available");

  Scene scene;
  scene.width = params.width;
  scene.height = params.height;
  const auto& bg_ids = catalog.ids(AssetKind::Background);
  if (params.catalog_background && !bg_ids.empty())
    scene.background = rng.pick(bg_ids);
  else
    scene.background = params.solid_background;

  const int want = static_cast<int>(rng.uniform_int(params.count_min, params.count_max));
  const double min_dim = std::min(params.width, params.height);
  const int margin = 2;
  std::vector<BBox> accepted;

  for (int i = 0; i < want; ++i) {
    for (int attempt = 0; attempt < params.max_place_attempts; ++attempt) {
      const std::string& id = rng.pick(pool);
      const Asset& asset = catalog.at(id);
      const double target = rng.uniform(params.size_min, params.size_max) * min_dim;
      const double scale =
          std::clamp(target / std::max(asset.width(), asset.height()), 0.05, 4.0);
      const double rot = params.rot_min == params.rot_max
                             ? params.rot_min
                             : rng.uniform(params.rot_min, params.rot_max);
      const RelExtents ext = matte_extents(asset, scale, rot);
      const double cx_lo = margin - ext.minx, cx_hi = params.width - margin - ext.maxx;
      const double cy_lo = margin - ext.miny, cy_hi = params.height - margin - ext.maxy;
      if (cx_lo > cx_hi || cy_lo > cy_hi) continue;
      Placement p;
      p.asset_id = id;
      p.cx = rng.uniform(cx_lo, cx_hi);
      p.cy = rng.uniform(cy_lo, cy_hi);
      p.scale = scale;
      p.rotation = rot;
      p.z = static_cast<int>(scene.placements.size());
      const BBox box = box_from_extents(p, ext);
      if (!placement_ok(box, accepted, params.policy, params.gap_px)) continue;
      scene.placements.push_back(std::move(p));
      accepted.push_back(box);
      break;
    }
  }

  if (scene.placements.empty()) {
    // always produce at least one object: centre the first pool entry
    const Asset& asset = catalog.at(pool.front());
    Placement p;
    p.asset_id = asset.id;
    p.cx = params.width * 0.5;
    p.cy = params.height * 0.5;
    p.scale = std::clamp(0.3 * min_dim / std::max(asset.width(), asset.height()), 0.05, 4.0);
    p.rotation = 0.0;
    p.z = 0;
    scene.placements.push_back(std::move(p));
  }
  return scene;
}

}  // namespace collage
