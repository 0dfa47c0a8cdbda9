#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "collage/image.hpp"

namespace collage {

enum class AssetKind { Sticker, Background, Glyph };
constexpr int kAssetKindCount = 3;

const char* asset_kind_name(AssetKind k);
std::optional<AssetKind> asset_kind_from_name(std::string_view s);

struct Asset {
  std::string id;
  AssetKind kind = AssetKind::Sticker;
  Image pixels;  // RGBA
  std::vector<std::string> tags;
  Rgb mean_color;  // over pixels with alpha >= 128; set when the asset is built

  int width() const { return pixels.width; }
  int height() const { return pixels.height; }
};

// Mean RGB over matte pixels (alpha >= 128); black if none qualify.
Rgb asset_mean_color(const Image& rgba);

// Non-empty problem list means the asset is rejected: wrong channel count,
// smaller than 8x8 on either side, or a fully transparent matte.
std::vector<std::string> asset_problems(const Image& rgba);

struct CatalogLoadReport {
  std::vector<std::string> warnings;  // skipped files, unreadable sidecars
  int loaded = 0;
  int skipped = 0;
};

class AssetCatalog {
 public:
  // Throws on duplicate id or invalid pixels.
  void add(Asset a);

  const Asset* find(const std::string& id) const;
  const Asset& at(const std::string& id) const;  // throws if missing
  size_t size() const { return assets_.size(); }

  // Ids of one kind, sorted; stable across loads of the same directory tree.
  const std::vector<std::string>& ids(AssetKind k) const;
  std::vector<std::string> ids_with_tag(AssetKind k, const std::string& tag) const;
  std::vector<std::string> all_tags(AssetKind k) const;

 private:
  std::map<std::string, Asset> assets_;
  std::array<std::vector<std::string>, kAssetKindCount> by_kind_;
};

// Directory layout: <root>/stickers, <root>/backgrounds, <root>/glyphs,
// each holding images plus an optional tags.json ({"file.png": ["tag", ...]}).
// Invalid assets are skipped with a warning in the report, not an error.
AssetCatalog load_catalog(const std::string& root, CatalogLoadReport* report = nullptr);

// Build a sticker from an RGB photo and a binary mask of the subject:
// alpha = 255 where mask is nonzero, cropped to the mask's bounding box.
// Throws if the mask is empty or shapes differ.
Asset cutout_from_segmentation(const std::string& id, const Image& rgb, const Image& mask);

}  // namespace collage
