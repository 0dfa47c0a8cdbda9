#include "collage/demo_pack.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "collage/font.hpp"
#include "collage/io.hpp"
#include "collage/prompts.hpp"
#include "collage/rng.hpp"

namespace fs = std::filesystem;

namespace collage {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sd_circle(double x, double y, double cx, double cy, double r) {
  return std::hypot(x - cx, y - cy) - r;
}

// Signed "inside if <= 0" field per shape tag, on coordinates normalized so
// the shape spans roughly [-1, 1].
double shape_field(int shape, double x, double y) {
  const double ax = std::abs(x), ay = std::abs(y);
  switch (shape) {
    case 0: {  // star
      const double a = std::atan2(y, x);
      const double spike = std::pow(std::max(0.0, std::cos(5.0 * (a + kPi / 2))), 1.6);
      return std::hypot(x, y) - (0.42 + 0.62 * spike);
    }
    case 1: {  // heart
      const double u = 1.25 * x, v = -1.25 * y + 0.3;
      const double q = u * u + v * v - 1.0;
      return q * q * q - u * u * v * v * v;
    }
    case 2: return std::abs(std::hypot(x, y) - 0.72) - 0.26;          // ring
    case 3: {                                                          // moon
      return std::max(std::hypot(x, y) - 0.95,
                      -(sd_circle(x, y, 0.5, 0.0, 0.78)));
    }
    case 4: return std::max(ax, ay) - 0.82;                            // square
    case 5: return ax + ay - 1.05;                                     // diamond
    case 6: return std::max(ax * 0.866 - y * 0.5, y) - 0.52;           // triangle
    case 7: return std::max(ax * 0.866 + ay * 0.5, ay) - 0.85;         // hexagon
    case 8: {                                                          // pentagon
      double d = -1e9;
      for (int k = 0; k < 5; ++k) {
        const double ang = 2.0 * kPi * k / 5.0 - kPi / 2;
        d = std::max(d, x * std::cos(ang) + y * std::sin(ang));
      }
      return d - 0.72;
    }
    case 9:
      return std::min(std::max(ax - 1.0, ay - 0.32), std::max(ax - 0.32, ay - 1.0));  // cross
    case 10: {  // drop
      return std::min(sd_circle(x, y, 0.0, 0.3, 0.62),
                      std::max(ax * 2.2 - (y + 0.9), y - 0.3));
    }
    case 11: {  // flower
      const double a = std::atan2(y, x);
      return std::hypot(x, y) - (0.45 + 0.45 * std::abs(std::cos(3.0 * a)));
    }
    case 12: {  // cloud
      double d = sd_circle(x, y, -0.55, 0.15, 0.42);
      d = std::min(d, sd_circle(x, y, 0.0, -0.12, 0.52));
      d = std::min(d, sd_circle(x, y, 0.55, 0.15, 0.42));
      d = std::min(d, std::max(ax - 0.75, std::abs(y - 0.3) - 0.18));
      return d;
    }
    case 13: {  // arrow
      const double shaft = std::max(std::abs(x + 0.4) - 0.6, ay - 0.24);
      const double head = std::max(std::max(ay - 0.75 * (1.0 - x), x - 1.0), 0.2 - x);
      return std::min(shaft, head);
    }
    case 14: return std::hypot(x, y) - 0.6;                            // dot
    default: return std::hypot(x / 0.78, y) - 0.92;                    // egg
  }
}

const char* kShapeTags[16] = {"star", "heart",   "ring",    "moon",  "square", "diamond",
                              "triangle", "hexagon", "pentagon", "cross", "drop", "flower",
                              "cloud", "arrow", "dot", "egg"};

// vivid fills whose nearest named colour is themselves
const int kFillNameIdx[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 14, 15};  // into kColorNames

Image render_shape(int shape, Rgb color, int size) {
  Image img(size, size, 4, 0);
  const double r = size * 0.42;
  const double c = size * 0.5;
  for (int y = 0; y < size; ++y) {
    uint8_t* p = img.row(y);
    for (int x = 0; x < size; ++x, p += 4) {
      const double nx = (x + 0.5 - c) / r;
      const double ny = (y + 0.5 - c) / r;
      if (shape_field(shape, nx, ny) <= 0.0) {
        p[0] = color.r;
        p[1] = color.g;
        p[2] = color.b;
        p[3] = 255;
      }
    }
  }
  return img;
}

Rgb mix_rgb(Rgb a, Rgb b, double t) {
  auto ch = [&](uint8_t ca, uint8_t cb) {
    return static_cast<uint8_t>(std::clamp(std::lround(ca + (cb - ca) * t), 0L, 255L));
  };
  return {ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

Image render_background(int kind, Rng& rng, int w, int h) {
  auto mid = [&]() -> Rgb {
    return {static_cast<uint8_t>(rng.uniform_int(90, 190)),
            static_cast<uint8_t>(rng.uniform_int(90, 190)),
            static_cast<uint8_t>(rng.uniform_int(90, 190))};
  };
  Image img(w, h, 3);
  switch (kind) {
    case 0:
    case 1: {  // linear gradient, vertical / diagonal
      const Rgb c0 = mid(), c1 = mid();
      for (int y = 0; y < h; ++y) {
        uint8_t* p = img.row(y);
        for (int x = 0; x < w; ++x, p += 3) {
          const double t = kind == 0 ? double(y) / (h - 1)
                                     : (double(x) / (w - 1) + double(y) / (h - 1)) * 0.5;
          const Rgb c = mix_rgb(c0, c1, t);
          p[0] = c.r;
          p[1] = c.g;
          p[2] = c.b;
        }
      }
      break;
    }
    case 2: {  // radial
      const Rgb c0 = mid(), c1 = mid();
      const double maxd = std::hypot(w * 0.5, h * 0.5);
      for (int y = 0; y < h; ++y) {
        uint8_t* p = img.row(y);
        for (int x = 0; x < w; ++x, p += 3) {
          const double t = std::hypot(x + 0.5 - w * 0.5, y + 0.5 - h * 0.5) / maxd;
          const Rgb c = mix_rgb(c0, c1, t);
          p[0] = c.r;
          p[1] = c.g;
          p[2] = c.b;
        }
      }
      break;
    }
    case 3: {  // value noise between two tones
      const Rgb c0 = mid(), c1 = mid();
      constexpr int kGrid = 8;
      double lattice[kGrid + 1][kGrid + 1];
      for (int gy = 0; gy <= kGrid; ++gy)
        for (int gx = 0; gx <= kGrid; ++gx) lattice[gy][gx] = rng.uniform();
      for (int y = 0; y < h; ++y) {
        uint8_t* p = img.row(y);
        const double fy = double(y) / h * kGrid;
        const int gy = std::min(static_cast<int>(fy), kGrid - 1);
        const double ty = fy - gy;
        for (int x = 0; x < w; ++x, p += 3) {
          const double fx = double(x) / w * kGrid;
          const int gx = std::min(static_cast<int>(fx), kGrid - 1);
          const double tx = fx - gx;
          const double v00 = lattice[gy][gx], v10 = lattice[gy][gx + 1];
          const double v01 = lattice[gy + 1][gx], v11 = lattice[gy + 1][gx + 1];
          const double v = (v00 * (1 - tx) + v10 * tx) * (1 - ty) +
                           (v01 * (1 - tx) + v11 * tx) * ty;
          const Rgb c = mix_rgb(c0, c1, v);
          p[0] = c.r;
          p[1] = c.g;
          p[2] = c.b;
        }
      }
      break;
    }
    default: {  // light solid
      const uint8_t v = static_cast<uint8_t>(rng.uniform_int(205, 240));
      const Rgb c{v, static_cast<uint8_t>(rng.uniform_int(205, 240)),
                  static_cast<uint8_t>(rng.uniform_int(205, 240))};
      img = make_solid(w, h, c);
      break;
    }
  }
  return img;
}

Image opaque_rgba(const Image& rgb) {
  Image out(rgb.width, rgb.height, 4);
  for (int y = 0; y < rgb.height; ++y) {
    const uint8_t* s = rgb.row(y);
    uint8_t* d = out.row(y);
    for (int x = 0; x < rgb.width; ++x, s += 3, d += 4) {
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
      d[3] = 255;
    }
  }
  return out;
}

struct DemoContent {
  struct Entry {
    std::string name;  // file stem
    AssetKind kind;
    Image pixels;                   // RGBA for catalog use
    Image file_pixels;              // what gets written to disk
    std::vector<std::string> tags;
  };
  std::vector<Entry> entries;
};

DemoContent build_demo_content(uint64_t seed) {
  DemoContent content;
  Rng rng(mix64(seed ^ hash_str("demo-pack")));

  for (int shape = 0; shape < 16; ++shape) {
    for (int variant = 0; variant < 2; ++variant) {
      const int fill = kFillNameIdx[static_cast<size_t>(
          rng.below(sizeof(kFillNameIdx) / sizeof(kFillNameIdx[0])))];
      const Rgb color = kColorNames[fill].anchor;
      const int size = variant == 0 ? 192 : 144;
      DemoContent::Entry e;
      e.name = std::string(kShapeTags[shape]) + "_" + std::to_string(variant);
      e.kind = AssetKind::Sticker;
      e.pixels = render_shape(shape, color, size);
      e.file_pixels = e.pixels;
      e.tags = {kShapeTags[shape], kColorNames[fill].name};
      content.entries.push_back(std::move(e));
    }
  }

  const char* bg_names[8] = {"grad_v", "grad_d", "radial", "noise_0",
                             "noise_1", "solid_0", "solid_1", "grad_v2"};
  const int bg_kinds[8] = {0, 1, 2, 3, 3, 4, 4, 0};
  for (int i = 0; i < 8; ++i) {
    DemoContent::Entry e;
    e.name = bg_names[i];
    e.kind = AssetKind::Background;
    e.file_pixels = render_background(bg_kinds[i], rng, 512, 512);
    e.pixels = opaque_rgba(e.file_pixels);
    e.tags = {"background"};
    content.entries.push_back(std::move(e));
  }

  for (const FontStyle& style : kFontStyles) {
    DemoContent::Entry e;
    e.name = style.id;
    e.kind = AssetKind::Glyph;
    e.pixels = render_glyph_sheet(style);
    e.file_pixels = e.pixels;
    e.tags = {"font"};
    content.entries.push_back(std::move(e));
  }
  return content;
}

const char* kind_dir(AssetKind k) {
  switch (k) {
    case AssetKind::Sticker: return "stickers";
    case AssetKind::Background: return "backgrounds";
    case AssetKind::Glyph: return "glyphs";
  }
  return "stickers";
}

}  // namespace

AssetCatalog make_demo_catalog(uint64_t seed) {
  AssetCatalog catalog;
  DemoContent content = build_demo_content(seed);
  for (auto& e : content.entries) {
    Asset a;
    a.id = std::string(kind_dir(e.kind)) + "/" + e.name;
    a.kind = e.kind;
    a.pixels = std::move(e.pixels);
    a.tags = e.tags;
    a.mean_color = asset_mean_color(a.pixels);
    catalog.add(std::move(a));
  }
  return catalog;
}

void write_demo_pack(const std::string& root, uint64_t seed) {
  DemoContent content = build_demo_content(seed);
  nlohmann::json sidecars[3];
  for (const auto& e : content.entries) {
    const fs::path dir = fs::path(root) / kind_dir(e.kind);
    fs::create_directories(dir);
    std::string filename;
    if (e.kind == AssetKind::Background) {
      filename = e.name + ".jpg";
      save_jpeg((dir / filename).string(), e.file_pixels, 92);
    } else {
      filename = e.name + ".png";
      save_png((dir / filename).string(), e.file_pixels, 6);
    }
    sidecars[static_cast<int>(e.kind)][filename] = e.tags;
  }
  for (int k = 0; k < 3; ++k) {
    const fs::path dir = fs::path(root) / kind_dir(static_cast<AssetKind>(k));
    if (sidecars[k].is_null()) continue;
    std::ofstream f(dir / "tags.json");
    f << sidecars[k].dump(2) << "\n";
  }
}

}  // namespace collage
