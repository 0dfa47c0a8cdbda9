#pragma once

#include <nlohmann/json.hpp>

#include "collage/condmaps.hpp"
#include "collage/config.hpp"
#include "collage/prompts.hpp"
#include "collage/render.hpp"
#include "collage/tasks.hpp"

namespace collage {

// One training pair held in memory. Roles follow the manifest: src/src2 are
// conditioning images, mask is a binary region, tgt is the target image.
// Empty images mean the role is absent; tgt is always present.
struct Sample {
  TaskKind task = TaskKind::T2IText;
  uint64_t seed = 0;
  int width = 0, height = 0;
  int bucket = 0;
  std::string prompt;      // possibly polished
  std::string raw_prompt;  // template output, before polishing
  Image src, src2, mask, tgt;
  nlohmann::json meta;
};

// Source of base images for inpainting tasks; implementations must be pure
// functions of the rng state they consume.
class ImagePool {
 public:
  virtual ~ImagePool() = default;
  struct Item {
    Image image;  // RGB
    std::string caption;
  };
  virtual Item next(Rng& rng, int width, int height) const = 0;
};

// Default pool: composites a sampled sticker scene and captions it.
class SyntheticScenePool : public ImagePool {
 public:
  SyntheticScenePool(const AssetCatalog& catalog, const GenConfig& cfg,
                     const BackgroundCache* bg_cache);
  Item next(Rng& rng, int width, int height) const override;

 private:
  const AssetCatalog& catalog_;
  const GenConfig& cfg_;
  const BackgroundCache* bg_cache_;
};

struct TaskgenContext {
  const AssetCatalog& catalog;
  const GenConfig& cfg;
  const BackgroundCache* bg_cache = nullptr;
  const ImagePool* pool = nullptr;          // required for inpaint/outpaint
  PromptPolisher* polisher = nullptr;       // optional
};

enum class DragKind { Translate, Scale, Rotate };
enum class MapKind { Canny, Depth, Seg };
enum class SegDetMode { Segment, Detect };

Sample gen_t2i(Rng& rng, const TaskgenContext& ctx, TaskKind which, int w, int h);
Sample gen_instruct_edit(Rng& rng, const TaskgenContext& ctx, EditOpKind op, int w, int h);
Sample gen_drag(Rng& rng, const TaskgenContext& ctx, DragKind kind, int w, int h);
Sample gen_inpaint(Rng& rng, const TaskgenContext& ctx, bool outpaint, int w, int h);
Sample gen_image_cond(Rng& rng, const TaskgenContext& ctx, MapKind kind, int w, int h);
Sample gen_subject_driven(Rng& rng, const TaskgenContext& ctx, int w, int h);
Sample gen_segdet(Rng& rng, const TaskgenContext& ctx, SegDetMode mode, int w, int h);

// Full dispatch: canvas size and task variant are derived from the seed, so
// a sample is reproducible from (task, seed, config) alone.
Sample generate_sample(TaskKind task, uint64_t seed, const TaskgenContext& ctx);

}  // namespace collage
