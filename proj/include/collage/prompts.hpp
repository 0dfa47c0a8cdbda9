#pragma once

#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "collage/scene.hpp"

namespace collage {

struct ColorNameEntry {
  const char* name;
  Rgb anchor;
};

// Fixed 16-entry naming palette; nearest anchor by squared RGB distance,
// ties broken by table order.
extern const std::array<ColorNameEntry, 16> kColorNames;
int name_color_index(Rgb c);
std::string_view name_color(Rgb c);

// One drag instruction point, normalized: x and dx by canvas width, y and dy
// by canvas height, all quantized to 4 decimals.
struct DragPoint {
  double x = 0, y = 0, dx = 0, dy = 0;
};

struct DragSpec {
  std::vector<DragPoint> points;
};

// Pixel-space drag handles (positions and displacement) to encode.
struct PixelDrag {
  double px = 0, py = 0, dx = 0, dy = 0;
};

// Serialized form: "drag: (x, y, dx, dy); (x, y, dx, dy)" with 4-decimal
// fixed-point fields. The returned spec holds the quantized values, so
// decode(encode(s)) reproduces it exactly.
std::pair<DragSpec, std::string> encode_drag(std::span<const PixelDrag> drags,
                                             int canvas_w, int canvas_h);
DragSpec decode_drag(std::string_view text);  // throws std::invalid_argument
std::string drag_to_string(const DragSpec& spec);

enum class EditOpKind { Add, Remove, Replace };
const char* edit_op_name(EditOpKind k);

struct EditOp {
  EditOpKind kind = EditOpKind::Add;
  std::string subject;      // "red star"
  std::string replacement;  // Replace only
};

// Deterministic template instruction, e.g. "remove the red star".
std::string edit_instruction(const EditOp& op, Rng& rng);

struct ObjectFact {
  std::string asset_id;
  std::string tag;        // primary tag ("star")
  std::string color;      // named mean colour
  std::string size_word;  // "small" | "medium" | "large"
  BBox box;               // clipped matte bounds
};

struct RelationFact {
  int a = 0, b = 0;
  SpatialRelation rel = SpatialRelation::Near;
};

struct SceneFacts {
  std::vector<ObjectFact> objects;
  std::vector<RelationFact> relations;
  nlohmann::json to_json() const;
};

struct SceneDescription {
  std::string prompt;
  SceneFacts facts;
};

// Caption with per-object colour/size/tag and one spatial relation when two
// or more objects are present; facts carry the machine-checkable claims.
SceneDescription describe_scene(const Scene& scene, const AssetCatalog& catalog, Rng& rng);

// Prompt rewriting hook. Implementations may fail (returning nullopt); the
// pipeline then falls back to the raw prompt.
class PromptPolisher {
 public:
  virtual ~PromptPolisher() = default;
  virtual std::optional<std::string> rewrite(const std::string& raw) = 0;
};

class IdentityPolisher : public PromptPolisher {
 public:
  std::optional<std::string> rewrite(const std::string& raw) override { return raw; }
};

// POSTs {"raw_prompt": ...} to the endpoint and reads {"polished_prompt": ...}.
// A bearer token is taken from credential_env when that variable is set.
class HttpPolisher : public PromptPolisher {
 public:
  HttpPolisher(std::string url, std::string credential_env, int timeout_ms);
  std::optional<std::string> rewrite(const std::string& raw) override;

 private:
  std::string url_;
  std::string credential_env_;
  int timeout_ms_;
};

struct PolishOutcome {
  std::string text;
  bool fell_back = false;
};

// Never fails: on polisher error the raw prompt is kept and fell_back set.
PolishOutcome polish_prompt(const std::string& raw, PromptPolisher* polisher);

}  // namespace collage
