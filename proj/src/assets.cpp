#include "collage/assets.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "collage/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace collage {

const char* asset_kind_name(AssetKind k) {
  switch (k) {
    case AssetKind::Sticker: return "sticker";
    case AssetKind::Background: return "background";
    case AssetKind::Glyph: return "glyph";
  }
  return "sticker";
}

std::optional<AssetKind> asset_kind_from_name(std::string_view s) {
  if (s == "sticker") return AssetKind::Sticker;
  if (s == "background") return AssetKind::Background;
  if (s == "glyph") return AssetKind::Glyph;
  return std::nullopt;
}

Rgb asset_mean_color(const Image& rgba) {
  if (rgba.channels != 4) return {};
  uint64_t r = 0, g = 0, b = 0, n = 0;
  const uint8_t* p = rgba.data.data();
  const size_t total = static_cast<size_t>(rgba.width) * rgba.height;
  for (size_t i = 0; i < total; ++i, p += 4) {
    if (p[3] < 128) continue;
    r += p[0];
    g += p[1];
    b += p[2];
    ++n;
  }
  if (!n) return {};
  return {static_cast<uint8_t>(r / n), static_cast<uint8_t>(g / n),
          static_cast<uint8_t>(b / n)};
}

std::vector<std::string> asset_problems(const Image& rgba) {
  std::vector<std::string> problems;
  if (rgba.channels != 4) problems.push_back("not RGBA");
  if (rgba.width < 8 || rgba.height < 8) problems.push_back("smaller than 8x8");
  if (rgba.channels == 4) {
    bool any = false;
    for (size_t i = 3; i < rgba.data.size(); i += 4)
      if (rgba.data[i] >= 128) {
        any = true;
        break;
      }
    if (!any) problems.push_back("matte is fully transparent");
  }
  return problems;
}

void AssetCatalog::add(Asset a) {
  if (a.id.empty()) throw std::invalid_argument("asset id is empty");
  if (assets_.count(a.id)) throw std::invalid_argument("duplicate asset id: " + a.id);
  if (auto probs = asset_problems(a.pixels); !probs.empty())
    throw std::invalid_argument("asset " + a.id + ": " + probs.front());
  auto& bucket = by_kind_[static_cast<int>(a.kind)];
  bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), a.id), a.id);
  assets_.emplace(a.id, std::move(a));
}

const Asset* AssetCatalog::find(const std::string& id) const {
  auto it = assets_.find(id);
  return it == assets_.end() ? nullptr : &it->second;
}

const Asset& AssetCatalog::at(const std::string& id) const {
  const Asset* a = find(id);
  if (!a) throw std::out_of_range("unknown asset id: " + id);
  return *a;
}

const std::vector<std::string>& AssetCatalog::ids(AssetKind k) const {
  return by_kind_[static_cast<int>(k)];
}

std::vector<std::string> AssetCatalog::ids_with_tag(AssetKind k, const std::string& tag) const {
  std::vector<std::string> out;
  for (const auto& id : ids(k)) {
    const Asset& a = assets_.at(id);
    if (std::find(a.tags.begin(), a.tags.end(), tag) != a.tags.end()) out.push_back(id);
  }
  return out;
}

std::vector<std::string> AssetCatalog::all_tags(AssetKind k) const {
  std::vector<std::string> out;
  for (const auto& id : ids(k))
    for (const auto& t : assets_.at(id).tags)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::map<std::string, std::vector<std::string>> read_tag_sidecar(
    const fs::path& dir, std::vector<std::string>* warnings) {
  std::map<std::string, std::vector<std::string>> tags;
  const fs::path sidecar = dir / "tags.json";
  if (!fs::exists(sidecar)) return tags;
  try {
    std::ifstream f(sidecar);
    json j = json::parse(f);
    for (auto& [file, arr] : j.items()) {
      std::vector<std::string> list;
      for (auto& t : arr) list.push_back(t.get<std::string>());
      tags[file] = std::move(list);
    }
  } catch (const std::exception& e) {
    if (warnings)
      warnings->push_back(sidecar.string() + ": " + e.what() + " (tags ignored)");
  }
  return tags;
}

// Backgrounds may be opaque RGB/JPEG; normalize everything to RGBA.
Image to_rgba(const Image& img) {
  if (img.channels == 4) return img;
  Image out(img.width, img.height, 4);
  for (int y = 0; y < img.height; ++y) {
    const uint8_t* s = img.row(y);
    uint8_t* d = out.row(y);
    for (int x = 0; x < img.width; ++x, s += img.channels, d += 4) {
      if (img.channels == 1) {
        d[0] = d[1] = d[2] = s[0];
      } else {
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
      }
      d[3] = 255;
    }
  }
  return out;
}

bool is_image_file(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

AssetCatalog load_catalog(const std::string& root, CatalogLoadReport* report) {
  AssetCatalog catalog;
  CatalogLoadReport local;
  CatalogLoadReport& rep = report ? *report : local;

  const std::pair<const char*, AssetKind> dirs[] = {
      {"stickers", AssetKind::Sticker},
      {"backgrounds", AssetKind::Background},
      {"glyphs", AssetKind::Glyph},
  };
  if (!fs::is_directory(root))
    throw std::invalid_argument("asset root is not a directory: " + root);

  for (const auto& [sub, kind] : dirs) {
    const fs::path dir = fs::path(root) / sub;
    if (!fs::is_directory(dir)) continue;
    auto tags = read_tag_sidecar(dir, &rep.warnings);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && is_image_file(entry.path()))
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      Asset a;
      a.id = std::string(sub) + "/" + file.stem().string();
      a.kind = kind;
      try {
        a.pixels = to_rgba(load_image(file.string()));
      } catch (const std::exception& e) {
        rep.warnings.push_back(file.string() + ": " + e.what() + " (skipped)");
        ++rep.skipped;
        continue;
      }
      if (auto probs = asset_problems(a.pixels); !probs.empty()) {
        rep.warnings.push_back(file.string() + ": " + probs.front() + " (skipped)");
        ++rep.skipped;
        continue;
      }
      if (auto it = tags.find(file.filename().string()); it != tags.end())
        a.tags = it->second;
      a.mean_color = asset_mean_color(a.pixels);
      catalog.add(std::move(a));
      ++rep.loaded;
    }
  }
  return catalog;
}

Asset cutout_from_segmentation(const std::string& id, const Image& rgb, const Image& mask) {
  if (rgb.channels != 3 || mask.channels != 1 || rgb.width != mask.width ||
      rgb.height != mask.height)
    throw std::invalid_argument("cutout_from_segmentation: want matching RGB and mask");
  int x0 = rgb.width, y0 = rgb.height, x1 = 0, y1 = 0;
  for (int y = 0; y < mask.height; ++y) {
    const uint8_t* m = mask.row(y);
    for (int x = 0; x < mask.width; ++x) {
      if (!m[x]) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x + 1);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y + 1);
    }
  }
  if (x1 <= x0) throw std::invalid_argument("cutout_from_segmentation: empty mask");
  Asset a;
  a.id = id;
  a.kind = AssetKind::Sticker;
  a.pixels = Image(x1 - x0, y1 - y0, 4);
  for (int y = y0; y < y1; ++y) {
    const uint8_t* s = rgb.px(x0, y);
    const uint8_t* m = mask.row(y) + x0;
    uint8_t* d = a.pixels.row(y - y0);
    for (int x = x0; x < x1; ++x, s += 3, d += 4) {
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
      d[3] = m[x - x0] ? 255 : 0;
    }
  }
  a.mean_color = asset_mean_color(a.pixels);
  return a;
}

}  // namespace collage
