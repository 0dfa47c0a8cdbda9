#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "collage/image.hpp"
#include "collage/scene.hpp"

namespace collage {

// Built-in stroke font rendered into glyph sprite sheets. A sheet is a
// 16x6 grid of 64 px cells covering ASCII 32..127; sheets are stored in the
// asset catalog as glyph assets, one per style.
constexpr int kCellSize = 64;
constexpr int kSheetCols = 16;
constexpr int kSheetRows = 6;
constexpr int kGlyphAdvance = 56;  // of kCellSize, before scaling

struct FontStyle {
  const char* id;
  int brush;        // stroke radius in cell pixels
  int shear_units;  // horizontal grid-units of slant
  int pitch;        // grid-unit width in cell pixels
};

extern const std::array<FontStyle, 4> kFontStyles;
const FontStyle* font_style(std::string_view id);

// Polyline strokes for a glyph, or nullptr when the character has none
// (undefined characters render as spaces). Lowercase maps to uppercase.
const char* glyph_strokes(char c);
bool glyph_defined(char c);

Image render_glyph_sheet(const FontStyle& style);  // RGBA 1024x384

struct TextExtent {
  int width = 0, height = 0;
};
TextExtent measure_text(std::string_view text, int size_px);

// Rasterize text from a glyph sheet onto an RGB canvas: per character the
// cell sprite is alpha-dilated for thickness, recoloured, scaled to size_px
// and alpha-composited at the pen position. Returns the tight bbox of the
// pixels touched (clipped to the canvas; empty if nothing landed).
BBox draw_text(Image& canvas, const Image& sheet, std::string_view text,
               int x, int y, int size_px, Rgb color, int thickness);

// Embedded word list for synthetic text content.
const std::vector<std::string>& builtin_words();

}  // namespace collage
