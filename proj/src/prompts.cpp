#include "collage/prompts.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include <httplib.h>

namespace collage {

const std::array<ColorNameEntry, 16> kColorNames = {{
    {"red", {255, 0, 0}},
    {"orange", {255, 165, 0}},
    {"yellow", {255, 255, 0}},
    {"green", {0, 128, 0}},
    {"cyan", {0, 255, 255}},
    {"blue", {0, 0, 255}},
    {"purple", {128, 0, 128}},
    {"pink", {255, 192, 203}},
    {"brown", {139, 69, 19}},
    {"black", {0, 0, 0}},
    {"white", {255, 255, 255}},
    {"gray", {128, 128, 128}},
    {"beige", {245, 245, 220}},
    {"magenta", {255, 0, 255}},
    {"teal", {0, 128, 128}},
    {"navy", {0, 0, 128}},
}};

int name_color_index(Rgb c) {
  int best = 0;
  int64_t best_d = -1;
  for (int i = 0; i < static_cast<int>(kColorNames.size()); ++i) {
    const Rgb a = kColorNames[i].anchor;
    const int64_t dr = int(c.r) - a.r, dg = int(c.g) - a.g, db = int(c.b) - a.b;
    const int64_t d = dr * dr + dg * dg + db * db;
    if (best_d < 0 || d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::string_view name_color(Rgb c) { return kColorNames[name_color_index(c)].name; }

namespace {

double quant4(double v) {
  double q = std::lround(v * 10000.0) / 10000.0;
  if (q == 0.0) q = 0.0;  // normalize -0
  return q;
}

void append_fixed4(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  out += buf;
}

}  // namespace

std::string drag_to_string(const DragSpec& spec) {
  std::string out = "drag:";
  bool first = true;
  for (const DragPoint& p : spec.points) {
    out += first ? " (" : "; (";
    first = false;
    append_fixed4(out, p.x);
    out += ", ";
    append_fixed4(out, p.y);
    out += ", ";
    append_fixed4(out, p.dx);
    out += ", ";
    append_fixed4(out, p.dy);
    out += ")";
  }
  return out;
}

std::pair<DragSpec, std::string> encode_drag(std::span<const PixelDrag> drags,
                                             int canvas_w, int canvas_h) {
  if (drags.empty()) throw std::invalid_argument("encode_drag: no drag points");
  if (canvas_w < 1 || canvas_h < 1) throw std::invalid_argument("encode_drag: empty canvas");
  DragSpec spec;
  for (const PixelDrag& d : drags) {
    DragPoint p;
    p.x = quant4(d.px / canvas_w);
    p.y = quant4(d.py / canvas_h);
    p.dx = quant4(d.dx / canvas_w);
    p.dy = quant4(d.dy / canvas_h);
    if (p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1)
      throw std::invalid_argument("encode_drag: handle outside the canvas");
    if (p.x + p.dx < 0 || p.x + p.dx > 1 || p.y + p.dy < 0 || p.y + p.dy > 1)
      throw std::invalid_argument("encode_drag: drag target outside the canvas");
    spec.points.push_back(p);
  }
  return {spec, drag_to_string(spec)};
}

namespace {

bool consume(std::string_view& s, std::string_view lit) {
  if (s.substr(0, lit.size()) != lit) return false;
  s.remove_prefix(lit.size());
  return true;
}

double parse_number(std::string_view& s) {
  char buf[64];
  size_t n = 0;
  while (n < s.size() && n < sizeof(buf) - 1 &&
         (std::isdigit(static_cast<unsigned char>(s[n])) || s[n] == '-' ||
          s[n] == '+' || s[n] == '.'))
    ++n;
  if (!n) throw std::invalid_argument("decode_drag: expected a number");
  std::memcpy(buf, s.data(), n);
  buf[n] = 0;
  char* end = nullptr;
  const double v = std::strtod(buf, &end);
  if (end != buf + n) throw std::invalid_argument("decode_drag: malformed number");
  s.remove_prefix(n);
  return v;
}

}  // namespace

DragSpec decode_drag(std::string_view text) {
  std::string_view s = text;
  if (!consume(s, "drag:")) throw std::invalid_argument("decode_drag: missing 'drag:' prefix");
  DragSpec spec;
  while (true) {
    if (!consume(s, spec.points.empty() ? " (" : "; ("))
      throw std::invalid_argument("decode_drag: expected '('");
    DragPoint p;
    p.x = parse_number(s);
    if (!consume(s, ", ")) throw std::invalid_argument("decode_drag: expected ', '");
    p.y = parse_number(s);
    if (!consume(s, ", ")) throw std::invalid_argument("decode_drag: expected ', '");
    p.dx = parse_number(s);
    if (!consume(s, ", ")) throw std::invalid_argument("decode_drag: expected ', '");
    p.dy = parse_number(s);
    if (!consume(s, ")")) throw std::invalid_argument("decode_drag: expected ')'");
    if (spec.points.size() >= 16) throw std::invalid_argument("decode_drag: too many points");
    spec.points.push_back(p);
    if (s.empty()) break;
  }
  return spec;
}

const char* edit_op_name(EditOpKind k) {
  switch (k) {
    case EditOpKind::Add: return "add";
    case EditOpKind::Remove: return "remove";
    case EditOpKind::Replace: return "replace";
  }
  return "add";
}

std::string edit_instruction(const EditOp& op, Rng& rng) {
  static const std::vector<std::string> add_tpl = {
      "add a % to the scene", "place a % in the image", "insert a %"};
  static const std::vector<std::string> remove_tpl = {
      "remove the %", "delete the %", "erase the %"};
  static const std::vector<std::string> replace_tpl = {
      "replace the % with a $", "swap the % for a $", "turn the % into a $"};
  const std::vector<std::string>* tpl = nullptr;
  switch (op.kind) {
    case EditOpKind::Add: tpl = &add_tpl; break;
    case EditOpKind::Remove: tpl = &remove_tpl; break;
    case EditOpKind::Replace: tpl = &replace_tpl; break;
  }
  if (op.subject.empty()) throw std::invalid_argument("edit_instruction: empty subject");
  if (op.kind == EditOpKind::Replace && op.replacement.empty())
    throw std::invalid_argument("edit_instruction: replace needs a replacement");
  std::string out = rng.pick(*tpl);
  if (auto pos = out.find('%'); pos != std::string::npos)
    out = out.substr(0, pos) + op.subject + out.substr(pos + 1);
  if (auto pos = out.find('$'); pos != std::string::npos)
    out = out.substr(0, pos) + op.replacement + out.substr(pos + 1);
  return out;
}

nlohmann::json SceneFacts::to_json() const {
  nlohmann::json objs = nlohmann::json::array();
  for (const ObjectFact& o : objects) {
    objs.push_back({{"asset_id", o.asset_id},
                    {"tag", o.tag},
                    {"color", o.color},
                    {"size", o.size_word},
                    {"box", {o.box.x0, o.box.y0, o.box.x1, o.box.y1}}});
  }
  nlohmann::json rels = nlohmann::json::array();
  for (const RelationFact& r : relations)
    rels.push_back({{"a", r.a}, {"b", r.b}, {"rel", relation_phrase(r.rel)}});
  return {{"objects", objs}, {"relations", rels}};
}

namespace {

std::string primary_tag(const Asset& asset) {
  if (!asset.tags.empty()) return asset.tags.front();
  std::string stem = asset.id;
  if (auto pos = stem.rfind('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
  while (!stem.empty() && (std::isdigit(static_cast<unsigned char>(stem.back())) ||
                           stem.back() == '_' || stem.back() == '-'))
    stem.pop_back();
  return stem.empty() ? asset.id : stem;
}

std::string size_word_for(const BBox& box, int canvas_w, int canvas_h) {
  const double rel = static_cast<double>(std::max(box.width(), box.height())) /
                     std::min(canvas_w, canvas_h);
  if (rel < 0.28) return "small";
  if (rel < 0.40) return "medium";
  return "large";
}

}  // namespace

SceneDescription describe_scene(const Scene& scene, const AssetCatalog& catalog, Rng& rng) {
  if (scene.placements.empty())
    throw std::invalid_argument("describe_scene: scene has no objects");
  SceneDescription out;
  for (const Placement& p : scene.placements) {
    const Asset& asset = catalog.at(p.asset_id);
    ObjectFact f;
    f.asset_id = asset.id;
    f.tag = primary_tag(asset);
    f.color = std::string(name_color(asset.mean_color));
    f.box = bbox_of(p, asset, scene.width, scene.height);
    f.size_word = size_word_for(f.box, scene.width, scene.height);
    out.facts.objects.push_back(std::move(f));
  }

  std::string prompt = "a scene with ";
  for (size_t i = 0; i < out.facts.objects.size(); ++i) {
    const ObjectFact& f = out.facts.objects[i];
    if (i) prompt += i + 1 == out.facts.objects.size() ? " and " : ", ";
    prompt += "a " + f.size_word + " " + f.color + " " + f.tag;
  }

  if (out.facts.objects.size() >= 2) {
    const int n = static_cast<int>(out.facts.objects.size());
    const int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    if (b >= a) ++b;
    RelationFact rel;
    rel.a = a;
    rel.b = b;
    rel.rel = spatial_relation(out.facts.objects[a].box, out.facts.objects[b].box,
                               scene.width, scene.height);
    out.facts.relations.push_back(rel);
    const ObjectFact& fa = out.facts.objects[a];
    const ObjectFact& fb = out.facts.objects[b];
    prompt += ". the " + fa.color + " " + fa.tag + " is ";
    prompt += relation_phrase(rel.rel);
    prompt += std::string(" the ") + fb.color + " " + fb.tag;
  }
  out.prompt = std::move(prompt);
  return out;
}

HttpPolisher::HttpPolisher(std::string url, std::string credential_env, int timeout_ms)
    : url_(std::move(url)), credential_env_(std::move(credential_env)),
      timeout_ms_(timeout_ms) {}

std::optional<std::string> HttpPolisher::rewrite(const std::string& raw) {
  // split scheme://host[:port]/path
  const auto scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) return std::nullopt;
  if (url_.substr(0, scheme_end) != "http") return std::nullopt;  // no TLS support
  const auto path_start = url_.find('/', scheme_end + 3);
  const std::string base = path_start == std::string::npos ? url_ : url_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(0, timeout_ms_ * 1000);
  client.set_read_timeout(0, timeout_ms_ * 1000);
  client.set_write_timeout(0, timeout_ms_ * 1000);
  httplib::Headers headers;
  if (!credential_env_.empty())
    if (const char* tok = std::getenv(credential_env_.c_str()); tok && *tok)
      headers.emplace("Authorization", std::string("Bearer ") + tok);

  nlohmann::json body = {{"raw_prompt", raw}};
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res || res->status != 200) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    if (!j.contains("polished_prompt") || !j["polished_prompt"].is_string())
      return std::nullopt;
    std::string text = j["polished_prompt"].get<std::string>();
    if (text.empty() || text.size() > 4096) return std::nullopt;
    return text;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

PolishOutcome polish_prompt(const std::string& raw, PromptPolisher* polisher) {
  if (!polisher) return {raw, false};
  if (auto text = polisher->rewrite(raw)) return {*text, false};
  return {raw, true};
}

}  // namespace collage
