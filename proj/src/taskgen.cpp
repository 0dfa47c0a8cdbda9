#include "collage/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#include "collage/dataset.hpp"
#include "collage/font.hpp"

namespace collage {

namespace {

constexpr Rgb kBlank{240, 240, 240};

nlohmann::json box_json(const BBox& b) { return {b.x0, b.y0, b.x1, b.y1}; }

const char* number_word(size_t n) {
  static const char* words[] = {"zero", "one", "two",   "three", "four",
                                "five", "six", "seven", "eight", "nine"};
  return n < 10 ? words[n] : "many";
}

std::string pluralize(const std::string& tag) {
  if (tag.empty()) return tag;
  const char c = tag.back();
  if (c == 's' || c == 'x' || c == 'h') return tag + "es";
  return tag + "s";
}

SceneParams base_scene_params(const GenConfig& cfg, int w, int h) {
  SceneParams p;
  p.width = w;
  p.height = h;
  p.count_min = cfg.object_count_min;
  p.count_max = cfg.object_count_max;
  p.size_min = cfg.object_size_min;
  p.size_max = cfg.object_size_max;
  p.policy = OverlapPolicy::NonOverlapping;
  return p;
}

std::string subject_phrase(const AssetCatalog& catalog, const std::string& asset_id) {
  const Asset& a = catalog.at(asset_id);
  std::string tag = a.tags.empty() ? std::string() : a.tags.front();
  if (tag.empty()) {
    tag = a.id;
    if (auto pos = tag.rfind('/'); pos != std::string::npos) tag = tag.substr(pos + 1);
  }
  return std::string(name_color(a.mean_color)) + " " + tag;
}

void finish_common(Sample& s, TaskKind task, const Rng& rng, int w, int h) {
  s.task = task;
  s.seed = rng.seed();
  s.width = w;
  s.height = h;
  s.bucket = bucket_of(w, h);
  s.meta["canvas"] = {w, h};
}

void apply_polish(Sample& s, const TaskgenContext& ctx) {
  const PolishOutcome out = polish_prompt(s.raw_prompt, ctx.polisher);
  s.prompt = out.text;
  if (out.fell_back) s.meta["polish_fell_back"] = true;
}

// Topmost-visible matte box of one placed layer (alpha >= 128, canvas clipped).
BBox matte_support(const PlacedLayer& L, int canvas_w, int canvas_h) {
  const int xb = std::max(0, L.x0), xe = std::min(canvas_w, L.x0 + L.raster.width);
  const int yb = std::max(0, L.y0), ye = std::min(canvas_h, L.y0 + L.raster.height);
  BBox box{canvas_w, canvas_h, 0, 0};
  bool any = false;
  for (int y = yb; y < ye; ++y) {
    const uint8_t* ap = L.raster.px(xb - L.x0, y - L.y0) + 3;
    for (int x = xb; x < xe; ++x, ap += 4) {
      if (*ap < 128) continue;
      any = true;
      box.x0 = std::min(box.x0, x);
      box.x1 = std::max(box.x1, x + 1);
      box.y0 = std::min(box.y0, y);
      box.y1 = std::max(box.y1, y + 1);
    }
  }
  return any ? box : BBox{};
}

}  // namespace

SyntheticScenePool::SyntheticScenePool(const AssetCatalog& catalog, const GenConfig& cfg,
                                       const BackgroundCache* bg_cache)
    : catalog_(catalog), cfg_(cfg), bg_cache_(bg_cache) {}

ImagePool::Item SyntheticScenePool::next(Rng& rng, int width, int height) const {
  SceneParams params = base_scene_params(cfg_, width, height);
  Scene scene = sample_scene(rng, catalog_, params);
  SceneDescription desc = describe_scene(scene, catalog_, rng);
  return {composite(scene, catalog_, bg_cache_), std::move(desc.prompt)};
}

namespace {

Sample t2i_text(Rng& rng, const TaskgenContext& ctx, int w, int h) {
  Sample s;
  const auto& words = builtin_words();
  std::string text = rng.pick(words);
  if (rng.bernoulli(0.35)) text += " " + rng.pick(words);

  const FontStyle& style = kFontStyles[rng.below(kFontStyles.size())];
  // vivid fills only; pale names would not read on the light canvas
  static const int fills[] = {0, 1, 3, 4, 5, 6, 8, 9, 13, 14, 15};
  const ColorNameEntry& color = kColorNames[fills[rng.below(std::size(fills))]];
  const int thickness = static_cast<int>(rng.uniform_int(1, 3));

  int size = static_cast<int>(rng.uniform_int(28, 72));
  TextExtent ext = measure_text(text, size);
  while (size > 12 && (ext.width > w - 16 || ext.height > h - 16)) {
    size -= 4;
    ext = measure_text(text, size);
  }
  if (ext.width > w - 16) {  // canvas too narrow even at minimum size
    text = text.substr(0, text.find(' '));
    ext = measure_text(text, size);
  }

  const Rgb bg{static_cast<uint8_t>(rng.uniform_int(228, 250)),
               static_cast<uint8_t>(rng.uniform_int(228, 250)),
               static_cast<uint8_t>(rng.uniform_int(228, 250))};
  Image canvas = make_solid(w, h, bg);
  const int x = static_cast<int>(rng.uniform_int(8, std::max(8, w - ext.width - 8)));
  const int y = static_cast<int>(rng.uniform_int(8, std::max(8, h - ext.height - 8)));

  const Asset* sheet_asset = ctx.catalog.find(std::string("glyphs/") + style.id);
  const Image sheet = sheet_asset ? sheet_asset->pixels : render_glyph_sheet(style);
  const BBox box = draw_text(canvas, sheet, text, x, y, size, color.anchor, thickness);
  if (box.empty()) throw std::runtime_error("t2i_text: nothing drawn");

  s.tgt = std::move(canvas);
  s.raw_prompt = "text \"" + text + "\" in " + color.name + ", " + style.id +
                 " style, stroke " + std::to_string(thickness);
  s.meta["text"] = text;
  s.meta["font"] = style.id;
  s.meta["color"] = color.name;
  s.meta["color_rgb"] = {color.anchor.r, color.anchor.g, color.anchor.b};
  s.meta["background_rgb"] = {bg.r, bg.g, bg.b};
  s.meta["size_px"] = size;
  s.meta["thickness"] = thickness;
  s.meta["text_box"] = box_json(box);
  return s;
}

Sample t2i_shapes(Rng& rng, const TaskgenContext& ctx, int w, int h) {
  Sample s;
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  params.policy = OverlapPolicy::DisjointGap;
  params.gap_px = 6;
  params.catalog_background = false;
  params.solid_background = kBlank;
  Scene scene = sample_scene(rng, ctx.catalog, params);

  // counts per tag, in first-appearance order
  std::vector<std::pair<std::string, int>> counts;
  nlohmann::json objects = nlohmann::json::array();
  for (const Placement& p : scene.placements) {
    const Asset& a = ctx.catalog.at(p.asset_id);
    const std::string tag = a.tags.empty() ? a.id : a.tags.front();
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto& e) { return e.first == tag; });
    if (it == counts.end())
      counts.emplace_back(tag, 1);
    else
      ++it->second;
    const BBox box = bbox_of(p, a, w, h);
    objects.push_back({{"tag", tag},
                       {"color", std::string(name_color(a.mean_color))},
                       {"box", box_json(box)}});
  }

  std::string prompt;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i) prompt += i + 1 == counts.size() ? " and " : ", ";
    prompt += std::string(number_word(counts[i].second)) + " ";
    prompt += counts[i].second > 1 ? pluralize(counts[i].first) : counts[i].first;
  }
  prompt += " on a plain background";

  s.tgt = composite(scene, ctx.catalog, ctx.bg_cache);
  s.raw_prompt = std::move(prompt);
  s.meta["objects"] = objects;
  s.meta["component_count"] = scene.placements.size();
  s.meta["background_rgb"] = {kBlank.r, kBlank.g, kBlank.b};
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& [tag, n] : counts) jc.push_back({{"tag", tag}, {"count", n}});
  s.meta["tag_counts"] = jc;
  return s;
}

Sample t2i_stickers(Rng& rng, const TaskgenContext& ctx, int w, int h) {
  Sample s;
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  Scene scene = sample_scene(rng, ctx.catalog, params);
  SceneDescription desc = describe_scene(scene, ctx.catalog, rng);
  s.tgt = composite(scene, ctx.catalog, ctx.bg_cache);
  s.raw_prompt = std::move(desc.prompt);
  s.meta["facts"] = desc.facts.to_json();
  return s;
}

}  // namespace

Sample gen_t2i(Rng& rng, const TaskgenContext& ctx, TaskKind which, int w, int h) {
  Sample s;
  switch (which) {
    case TaskKind::T2IText: s = t2i_text(rng, ctx, w, h); break;
    case TaskKind::T2IShapes: s = t2i_shapes(rng, ctx, w, h); break;
    case TaskKind::T2IStickers: s = t2i_stickers(rng, ctx, w, h); break;
    default: throw std::invalid_argument("gen_t2i: not a t2i task");
  }
  finish_common(s, which, rng, w, h);
  apply_polish(s, ctx);
  return s;
}

Sample gen_instruct_edit(Rng& rng, const TaskgenContext& ctx, EditOpKind op, int w, int h) {
  Sample s;
  s.meta["op"] = edit_op_name(op);

  if (op == EditOpKind::Add) {
    SceneParams params = base_scene_params(ctx.cfg, w, h);
    params.count_min = params.count_max = 1;
    params.catalog_background = false;
    params.solid_background = kBlank;
    Scene scene = sample_scene(rng, ctx.catalog, params);
    SceneRaster sr = rasterize_scene(scene, ctx.catalog, ctx.bg_cache);
    s.src = sr.background;
    s.tgt = composite(sr);
    const std::string subject = subject_phrase(ctx.catalog, scene.placements[0].asset_id);
    s.raw_prompt = edit_instruction({op, subject, ""}, rng);
    const BBox region = layer_support(sr.layers[0], w, h);
    s.meta["subject"] = subject;
    s.meta["edit_region"] = box_json(region);
    s.meta["target_box"] =
        box_json(bbox_of(scene.placements[0], ctx.catalog.at(scene.placements[0].asset_id), w, h));
  } else {
    SceneParams params = base_scene_params(ctx.cfg, w, h);
    params.count_min = std::max(2, params.count_min);
    params.count_max = std::max(params.count_max, params.count_min);
    Scene scene = sample_scene(rng, ctx.catalog, params);
    const size_t t = rng.below(scene.placements.size());
    SceneRaster sr = rasterize_scene(scene, ctx.catalog, ctx.bg_cache);
    s.src = composite(sr);
    const std::string subject = subject_phrase(ctx.catalog, scene.placements[t].asset_id);
    const BBox old_support = layer_support(sr.layers[t], w, h);

    if (op == EditOpKind::Remove) {
      SceneRaster without = sr;
      without.layers.erase(without.layers.begin() + static_cast<ptrdiff_t>(t));
      s.tgt = composite(without);
      s.raw_prompt = edit_instruction({op, subject, ""}, rng);
      s.meta["edit_region"] = box_json(old_support);
    } else {  // Replace
      const auto& pool = ctx.catalog.ids(AssetKind::Sticker);
      const std::string& old_id = scene.placements[t].asset_id;
      const std::string old_tag = ctx.catalog.at(old_id).tags.empty()
                                      ? old_id
                                      : ctx.catalog.at(old_id).tags.front();
      std::string new_id = old_id;
      for (int attempt = 0; attempt < 40 && pool.size() > 1; ++attempt) {
        const std::string& cand = rng.pick(pool);
        if (cand == old_id) continue;
        const Asset& ca = ctx.catalog.at(cand);
        const std::string cand_tag = ca.tags.empty() ? cand : ca.tags.front();
        new_id = cand;
        if (cand_tag != old_tag) break;
      }
      Scene after = scene;
      after.placements[t].asset_id = new_id;
      SceneRaster sr2 = rasterize_scene(after, ctx.catalog, ctx.bg_cache);
      s.tgt = composite(sr2);
      const std::string replacement = subject_phrase(ctx.catalog, new_id);
      s.raw_prompt = edit_instruction({op, subject, replacement}, rng);
      BBox region = layer_support(sr2.layers[t], w, h);
      region.x0 = std::min(region.x0, old_support.x0);
      region.y0 = std::min(region.y0, old_support.y0);
      region.x1 = std::max(region.x1, old_support.x1);
      region.y1 = std::max(region.y1, old_support.y1);
      s.meta["replacement"] = replacement;
      s.meta["edit_region"] = box_json(region);
    }
    s.meta["subject"] = subject;
    s.meta["target_index"] = t;
    s.meta["target_box"] =
        box_json(bbox_of(scene.placements[t], ctx.catalog.at(scene.placements[t].asset_id), w, h));
  }

  finish_common(s, TaskKind::InstructEdit, rng, w, h);
  apply_polish(s, ctx);
  return s;
}

namespace {

const char* drag_kind_name(DragKind k) {
  switch (k) {
    case DragKind::Translate: return "translate";
    case DragKind::Scale: return "scale";
    case DragKind::Rotate: return "rotate";
  }
  return "translate";
}

// Random matte pixels of a placed layer, in canvas coordinates.
std::vector<std::pair<int, int>> sample_handles(Rng& rng, const PlacedLayer& L,
                                                int canvas_w, int canvas_h, int count) {
  std::vector<std::pair<int, int>> out;
  const int xb = std::max(0, L.x0), xe = std::min(canvas_w, L.x0 + L.raster.width);
  const int yb = std::max(0, L.y0), ye = std::min(canvas_h, L.y0 + L.raster.height);
  if (xb >= xe || yb >= ye) return out;
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 400; ++attempt) {
      const int x = static_cast<int>(rng.uniform_int(xb, xe - 1));
      const int y = static_cast<int>(rng.uniform_int(yb, ye - 1));
      if (L.raster.px(x - L.x0, y - L.y0)[3] >= 128) {
        out.emplace_back(x, y);
        placed = true;
        break;
      }
    }
    if (!placed) break;
  }
  return out;
}

}  // namespace

Sample gen_drag(Rng& rng, const TaskgenContext& ctx, DragKind kind, int w, int h) {
  Sample s;
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  params.count_min = 1;
  params.count_max = std::min(3, std::max(1, params.count_max));
  params.size_min = std::max(params.size_min, 0.28);
  params.size_max = std::max(params.size_max, 0.34);
  Scene scene = sample_scene(rng, ctx.catalog, params);
  const size_t t = rng.below(scene.placements.size());
  const Placement& p = scene.placements[t];
  const Asset& asset = ctx.catalog.at(p.asset_id);

  Placement p2 = p;
  double handle_cx = p.cx, handle_cy = p.cy;
  double tf = 1.0, trot = 0.0;
  int tdx = 0, tdy = 0;
  const int margin = 2;
  bool placed = false;
  for (int attempt = 0; attempt < 80 && !placed; ++attempt) {
    p2 = p;
    switch (kind) {
      case DragKind::Translate: {
        const double mag = 0.05 + 0.20 * rng.uniform();
        const double ang = rng.uniform(0, 2.0 * 3.14159265358979323846);
        tdx = static_cast<int>(std::lround(mag * w * std::cos(ang)));
        tdy = static_cast<int>(std::lround(mag * h * std::sin(ang)));
        if (std::abs(tdx) + std::abs(tdy) < std::max(8, std::min(w, h) / 20)) continue;
        p2.cx += tdx;
        p2.cy += tdy;
        break;
      }
      case DragKind::Scale: {
        tf = rng.uniform(0.72, 1.38);
        if (tf > 0.97 && tf < 1.03) continue;
        const double ns = std::clamp(p.scale * tf, 0.05, 4.0);
        tf = ns / p.scale;
        if (std::abs(tf - 1.0) < 0.03) continue;
        p2.scale = ns;
        break;
      }
      case DragKind::Rotate: {
        trot = rng.uniform(0.26, 1.05) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
        p2.rotation = p.rotation + trot;
        break;
      }
    }
    const BBox nb = bbox_of_unclipped(p2, asset);
    placed = nb.x0 >= margin && nb.y0 >= margin && nb.x1 <= w - margin && nb.y1 <= h - margin;
  }
  if (!placed) {  // tiny guaranteed translation
    kind = DragKind::Translate;
    p2 = p;
    tf = 1.0;
    trot = 0.0;
    const BBox b = bbox_of_unclipped(p, asset);
    tdx = b.x0 >= w - b.x1 ? -std::max(8, std::min(w, h) / 20)
                           : std::max(8, std::min(w, h) / 20);
    tdy = 0;
    p2.cx += tdx;
  }

  SceneRaster sr = rasterize_scene(scene, ctx.catalog, ctx.bg_cache);
  s.src = composite(sr);
  Scene after = scene;
  after.placements[t] = p2;
  SceneRaster sr2 = rasterize_scene(after, ctx.catalog, ctx.bg_cache);
  s.tgt = composite(sr2);

  const int k = static_cast<int>(rng.uniform_int(1, 4));
  const auto handle_px = sample_handles(rng, sr.layers[t], w, h, k);
  if (handle_px.empty()) throw std::runtime_error("drag: no matte pixels for handles");
  std::vector<PixelDrag> drags;
  for (const auto& [hx, hy] : handle_px) {
    PixelDrag d;
    d.px = hx;
    d.py = hy;
    switch (kind) {
      case DragKind::Translate:
        d.dx = tdx;
        d.dy = tdy;
        break;
      case DragKind::Scale:
        d.dx = (tf - 1.0) * (hx - handle_cx);
        d.dy = (tf - 1.0) * (hy - handle_cy);
        break;
      case DragKind::Rotate: {
        double c, sn;
        rotation_cos_sin(trot, c, sn);
        const double rx = hx - handle_cx, ry = hy - handle_cy;
        d.dx = c * rx - sn * ry - rx;
        d.dy = sn * rx + c * ry - ry;
        break;
      }
    }
    // keep the encoded target inside the canvas
    d.dx = std::clamp(d.px + d.dx, 0.0, double(w)) - d.px;
    d.dy = std::clamp(d.py + d.dy, 0.0, double(h)) - d.py;
    drags.push_back(d);
  }
  auto [spec, text] = encode_drag(drags, w, h);
  s.raw_prompt = text;
  s.prompt = text;

  const BBox src_box = matte_support(sr.layers[t], w, h);
  const BBox tgt_box = matte_support(sr2.layers[t], w, h);
  BBox expected;
  if (kind == DragKind::Translate) {
    expected = {src_box.x0 + tdx, src_box.y0 + tdy, src_box.x1 + tdx, src_box.y1 + tdy};
  } else {
    expected = bbox_of(p2, asset, w, h);
  }

  s.meta["drag_kind"] = drag_kind_name(kind);
  s.meta["target_index"] = t;
  s.meta["subject"] = subject_phrase(ctx.catalog, p.asset_id);
  if (kind == DragKind::Translate) s.meta["delta"] = {tdx, tdy};
  if (kind == DragKind::Scale) s.meta["factor"] = tf;
  if (kind == DragKind::Rotate) s.meta["angle"] = trot;
  s.meta["src_box"] = box_json(src_box);
  s.meta["tgt_box"] = box_json(tgt_box);
  s.meta["expected_tgt_box"] = box_json(expected);
  nlohmann::json jh = nlohmann::json::array();
  for (const DragPoint& dp : spec.points) jh.push_back({dp.x, dp.y, dp.dx, dp.dy});
  s.meta["handles"] = jh;

  finish_common(s, TaskKind::DragEdit, rng, w, h);
  return s;
}

Sample gen_inpaint(Rng& rng, const TaskgenContext& ctx, bool outpaint, int w, int h) {
  if (!ctx.pool) throw std::invalid_argument("inpaint: no image pool");
  Sample s;
  ImagePool::Item base = ctx.pool->next(rng, w, h);

  MaskKind kind = MaskKind::Edge;
  if (!outpaint) kind = rng.below(2) ? MaskKind::Block : MaskKind::Smear;
  s.mask = gen_mask(kind, rng, w, h);

  s.tgt = base.image;
  s.src = std::move(base.image);
  for (int y = 0; y < h; ++y) {
    uint8_t* p = s.src.row(y);
    const uint8_t* m = s.mask.row(y);
    for (int x = 0; x < w; ++x, p += 3)
      if (m[x]) p[0] = p[1] = p[2] = 128;
  }

  const bool caption = (rng.fork("caption").next() & 1) != 0;
  s.raw_prompt = caption ? base.caption : std::string();
  s.meta["mask_kind"] = mask_kind_name(kind);
  s.meta["caption_present"] = caption;
  s.meta["mask_coverage"] = mask_fraction(s.mask);

  finish_common(s, outpaint ? TaskKind::Outpaint : TaskKind::Inpaint, rng, w, h);
  if (caption)
    apply_polish(s, ctx);
  else
    s.prompt.clear();
  return s;
}

namespace {

const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::Canny: return "canny";
    case MapKind::Depth: return "depth";
    case MapKind::Seg: return "seg";
  }
  return "canny";
}

const char* map_phrase(MapKind k) {
  switch (k) {
    case MapKind::Canny: return "edge map";
    case MapKind::Depth: return "depth map";
    case MapKind::Seg: return "segmentation map";
  }
  return "edge map";
}

}  // namespace

Sample gen_image_cond(Rng& rng, const TaskgenContext& ctx, MapKind kind, int w, int h) {
  Sample s;
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  Scene scene = sample_scene(rng, ctx.catalog, params);
  SceneDescription desc = describe_scene(scene, ctx.catalog, rng);
  SceneRaster sr = rasterize_scene(scene, ctx.catalog, ctx.bg_cache);
  s.tgt = composite(sr);

  switch (kind) {
    case MapKind::Canny: s.src = expand_to_rgb(canny(s.tgt)); break;
    case MapKind::Depth: s.src = expand_to_rgb(depth_map(sr)); break;
    case MapKind::Seg: s.src = seg_map(sr); break;
  }

  s.raw_prompt = std::string("generate an image matching this ") + map_phrase(kind) +
                 ": " + desc.prompt;
  s.meta["map_kind"] = map_kind_name(kind);
  s.meta["facts"] = desc.facts.to_json();
  if (kind == MapKind::Depth) {
    nlohmann::json levels = nlohmann::json::array();
    const int L = static_cast<int>(sr.layers.size());
    for (int i = 0; i < L; ++i)
      levels.push_back(static_cast<int>(std::lround(255.0 * (i + 1) / L)));
    s.meta["depth_levels"] = levels;
  }
  if (kind == MapKind::Seg) {
    nlohmann::json colors = nlohmann::json::array();
    for (size_t i = 0; i < sr.layers.size(); ++i) {
      const Rgb c = kSegPalette[1 + (i % 31)];
      colors.push_back({c.r, c.g, c.b});
    }
    s.meta["seg_colors"] = colors;
  }

  finish_common(s, TaskKind::ImageCond, rng, w, h);
  apply_polish(s, ctx);
  return s;
}

Sample gen_subject_driven(Rng& rng, const TaskgenContext& ctx, int w, int h) {
  Sample s;
  const auto& stickers = ctx.catalog.ids(AssetKind::Sticker);
  if (stickers.empty()) throw std::invalid_argument("subject_driven: no stickers");
  const std::string& subject_id = rng.pick(stickers);
  const Asset& subject = ctx.catalog.at(subject_id);

  const auto& bgs = ctx.catalog.ids(AssetKind::Background);
  Scene card;
  card.width = w;
  card.height = h;
  card.background = kBlank;
  Placement cp;
  cp.asset_id = subject_id;
  cp.cx = w * 0.5;
  cp.cy = h * 0.5;
  cp.scale = std::clamp(0.5 * std::min(w, h) / std::max(subject.width(), subject.height()),
                        0.05, 4.0);
  card.placements.push_back(cp);
  s.src = composite(card, ctx.catalog, ctx.bg_cache);

  Scene target;
  target.width = w;
  target.height = h;
  if (!bgs.empty())
    target.background = rng.pick(bgs);
  else
    target.background = Rgb{210, 215, 220};
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  params.count_min = params.count_max = 1;
  params.size_min = 0.30;
  params.size_max = 0.50;
  params.sticker_pool = {subject_id};
  params.catalog_background = false;  // background chosen above
  Scene placed = sample_scene(rng, ctx.catalog, params);
  target.placements = placed.placements;
  SceneRaster sr = rasterize_scene(target, ctx.catalog, ctx.bg_cache);
  s.src2 = sr.background;
  s.tgt = composite(sr);

  const std::string phrase = subject_phrase(ctx.catalog, subject_id);
  s.raw_prompt = "place this " + phrase + " on the new background";
  s.meta["subject_id"] = subject_id;
  s.meta["subject"] = phrase;
  s.meta["target_box"] = box_json(
      bbox_of(target.placements[0], subject, w, h));
  s.meta["card_box"] = box_json(bbox_of(cp, subject, w, h));

  finish_common(s, TaskKind::SubjectDriven, rng, w, h);
  apply_polish(s, ctx);
  return s;
}

Sample gen_segdet(Rng& rng, const TaskgenContext& ctx, SegDetMode mode, int w, int h) {
  Sample s;
  SceneParams params = base_scene_params(ctx.cfg, w, h);
  params.count_min = std::max(2, params.count_min);
  Scene scene = sample_scene(rng, ctx.catalog, params);
  const size_t t = rng.below(scene.placements.size());
  SceneRaster sr = rasterize_scene(scene, ctx.catalog, ctx.bg_cache);
  s.src = composite(sr);
  const std::string subject = subject_phrase(ctx.catalog, scene.placements[t].asset_id);
  const BBox box =
      bbox_of(scene.placements[t], ctx.catalog.at(scene.placements[t].asset_id), w, h);

  if (mode == SegDetMode::Segment) {
    Image vis = visible_mask(sr, t);
    // a vivid highlight that is not the object's own colour
    static const int fills[] = {0, 2, 3, 4, 5, 13};
    const int own = name_color_index(ctx.catalog.at(scene.placements[t].asset_id).mean_color);
    int pick = fills[rng.below(std::size(fills))];
    if (pick == own) pick = fills[(std::find(std::begin(fills), std::end(fills), pick) -
                                   std::begin(fills) + 1) % std::size(fills)];
    const Rgb hl = kColorNames[pick].anchor;
    s.tgt = color_highlight(s.src, vis, hl, 0.85);
    s.raw_prompt = "highlight the " + subject + " in " + kColorNames[pick].name;
    // tight bounds of the recoloured pixels
    BBox mbox{w, h, 0, 0};
    bool any = false;
    for (int y = 0; y < h; ++y) {
      const uint8_t* m = vis.row(y);
      for (int x = 0; x < w; ++x) {
        if (!m[x]) continue;
        any = true;
        mbox.x0 = std::min(mbox.x0, x);
        mbox.x1 = std::max(mbox.x1, x + 1);
        mbox.y0 = std::min(mbox.y0, y);
        mbox.y1 = std::max(mbox.y1, y + 1);
      }
    }
    if (!any) throw std::runtime_error("segdet: target is fully occluded");
    s.mask = std::move(vis);
    s.meta["mode"] = "segment";
    s.meta["highlight"] = kColorNames[pick].name;
    s.meta["highlight_rgb"] = {hl.r, hl.g, hl.b};
    s.meta["opacity"] = 0.85;
    s.meta["edit_region"] = box_json(mbox);
  } else {
    const Rgb frame{255, 0, 0};
    const int thickness = 3;
    s.tgt = draw_bbox(s.src, box, frame, thickness);
    s.raw_prompt = "draw a bounding box around the " + subject;
    s.meta["mode"] = "detect";
    s.meta["frame_rgb"] = {frame.r, frame.g, frame.b};
    s.meta["thickness"] = thickness;
    s.meta["edit_region"] = box_json(box);
  }

  s.meta["subject"] = subject;
  s.meta["target_index"] = t;
  s.meta["target_box"] = box_json(box);

  finish_common(s, TaskKind::SegDet, rng, w, h);
  apply_polish(s, ctx);
  return s;
}

Sample generate_sample(TaskKind task, uint64_t seed, const TaskgenContext& ctx) {
  Rng rng(seed);
  const auto& sizes = ctx.cfg.canvas_sizes;
  if (sizes.empty()) throw std::invalid_argument("generate_sample: no canvas sizes");
  const CanvasSize cs = sizes[rng.fork("canvas").below(sizes.size())];
  const int w = cs.width, h = cs.height;
  Rng variant = rng.fork("variant");

  switch (task) {
    case TaskKind::T2IText:
    case TaskKind::T2IShapes:
    case TaskKind::T2IStickers:
      return gen_t2i(rng, ctx, task, w, h);
    case TaskKind::InstructEdit: {
      static const EditOpKind ops[] = {EditOpKind::Add, EditOpKind::Remove,
                                       EditOpKind::Replace};
      return gen_instruct_edit(rng, ctx, ops[variant.below(3)], w, h);
    }
    case TaskKind::DragEdit: {
      static const DragKind kinds[] = {DragKind::Translate, DragKind::Scale,
                                       DragKind::Rotate};
      return gen_drag(rng, ctx, kinds[variant.below(3)], w, h);
    }
    case TaskKind::Inpaint: return gen_inpaint(rng, ctx, false, w, h);
    case TaskKind::Outpaint: return gen_inpaint(rng, ctx, true, w, h);
    case TaskKind::ImageCond: {
      static const MapKind kinds[] = {MapKind::Canny, MapKind::Depth, MapKind::Seg};
      return gen_image_cond(rng, ctx, kinds[variant.below(3)], w, h);
    }
    case TaskKind::SubjectDriven: return gen_subject_driven(rng, ctx, w, h);
    case TaskKind::SegDet:
      return gen_segdet(rng, ctx, variant.below(2) ? SegDetMode::Detect : SegDetMode::Segment,
                        w, h);
  }
  throw std::invalid_argument("generate_sample: unknown task");
}

}  // namespace collage
