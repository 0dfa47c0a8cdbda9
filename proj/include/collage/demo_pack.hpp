#pragma once

#include <cstdint>
#include <string>

#include "collage/assets.hpp"

namespace collage {

// Self-contained asset pack: 32 flat-colour stickers over 16 shape tags,
// 8 procedural backgrounds and one glyph sheet per built-in font style.
// Deterministic for a given seed.
AssetCatalog make_demo_catalog(uint64_t seed = 7);

// Same content written as an asset root (stickers/, backgrounds/, glyphs/
// plus tags.json sidecars). Backgrounds are JPEG, the rest PNG.
void write_demo_pack(const std::string& root, uint64_t seed = 7);

}  // namespace collage
