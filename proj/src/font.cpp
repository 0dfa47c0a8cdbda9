#include "collage/font.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "collage/detail/resample.hpp"
#include "collage/render.hpp"

namespace collage {

namespace detail {
const char* lookup_strokes(char c);
const std::vector<std::string>& word_list();
}  // namespace detail

const std::array<FontStyle, 4> kFontStyles = {{
    {"block", 2, 0, 10},
    {"bold", 4, 0, 10},
    {"slant", 2, 1, 10},
    {"wide", 3, 0, 12},
}};

const FontStyle* font_style(std::string_view id) {
  for (const FontStyle& s : kFontStyles)
    if (id == s.id) return &s;
  return nullptr;
}

const char* glyph_strokes(char c) { return detail::lookup_strokes(c); }
bool glyph_defined(char c) { return detail::lookup_strokes(c) != nullptr; }

const std::vector<std::string>& builtin_words() { return detail::word_list(); }

namespace {

void brush_disk(Image& img, int cx, int cy, int r) {
  for (int dy = -r; dy <= r; ++dy) {
    const int y = cy + dy;
    if (y < 0 || y >= img.height) continue;
    const int span = static_cast<int>(std::floor(std::sqrt(double(r) * r - double(dy) * dy)));
    for (int x = std::max(0, cx - span); x <= std::min(img.width - 1, cx + span); ++x) {
      uint8_t* p = img.px(x, y);
      p[0] = p[1] = p[2] = p[3] = 255;
    }
  }
}

void brush_line(Image& img, double x0, double y0, double x1, double y1, int r) {
  const double dist = std::hypot(x1 - x0, y1 - y0);
  const int n = std::max(1, static_cast<int>(std::ceil(dist)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    brush_disk(img, static_cast<int>(std::lround(x0 + (x1 - x0) * t)),
               static_cast<int>(std::lround(y0 + (y1 - y0) * t)), r);
  }
}

struct CellPoint {
  double x, y;
};

CellPoint grid_point(int gx, int gy, const FontStyle& style) {
  const double shift = style.shear_units * (6 - gy) / 6.0;
  return {8.0 + (gx + shift) * style.pitch, 8.0 + gy * 8.0};
}

void draw_glyph(Image& cell, const char* strokes, const FontStyle& style) {
  const char* p = strokes;
  while (*p) {
    CellPoint prev{-1, -1};
    bool have_prev = false;
    while (*p && *p != ',') {
      const int gx = p[0] - '0';
      const int gy = p[1] - '0';
      p += 2;
      const CellPoint cur = grid_point(gx, gy, style);
      if (have_prev)
        brush_line(cell, prev.x, prev.y, cur.x, cur.y, style.brush);
      else
        brush_disk(cell, static_cast<int>(std::lround(cur.x)),
                   static_cast<int>(std::lround(cur.y)), style.brush);
      prev = cur;
      have_prev = true;
    }
    if (*p == ',') ++p;
  }
}

Image cell_sprite(const Image& sheet, char c) {
  const int code = static_cast<unsigned char>(c) - 32;
  const int col = code % kSheetCols, row = code / kSheetCols;
  Image cell(kCellSize, kCellSize, 4, 0);
  for (int y = 0; y < kCellSize; ++y)
    std::memcpy(cell.row(y), sheet.px(col * kCellSize, row * kCellSize + y),
                static_cast<size_t>(kCellSize) * 4);
  return cell;
}

Image dilate_alpha(const Image& cell, int r) {
  Image out = cell;
  for (int y = 0; y < cell.height; ++y)
    for (int x = 0; x < cell.width; ++x) {
      if (cell.px(x, y)[3] >= 128) continue;
      bool hit = false;
      for (int dy = -r; dy <= r && !hit; ++dy)
        for (int dx = -r; dx <= r && !hit; ++dx) {
          if (dx * dx + dy * dy > r * r) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= cell.width || ny >= cell.height) continue;
          if (cell.px(nx, ny)[3] >= 128) hit = true;
        }
      if (hit) {
        uint8_t* p = out.px(x, y);
        p[0] = p[1] = p[2] = p[3] = 255;
      }
    }
  return out;
}

char normalize_char(char c) {
  if (c >= 'a' && c <= 'z') return static_cast<char>(c - 'a' + 'A');
  return c;
}

}  // namespace

Image render_glyph_sheet(const FontStyle& style) {
  Image sheet(kSheetCols * kCellSize, kSheetRows * kCellSize, 4, 0);
  for (int code = 0; code < kSheetCols * kSheetRows; ++code) {
    const char c = static_cast<char>(32 + code);
    const char* strokes = detail::lookup_strokes(c);
    if (!strokes) continue;
    Image cell(kCellSize, kCellSize, 4, 0);
    draw_glyph(cell, strokes, style);
    const int col = code % kSheetCols, row = code / kSheetCols;
    for (int y = 0; y < kCellSize; ++y)
      std::memcpy(sheet.px(col * kCellSize, row * kCellSize + y), cell.row(y),
                  static_cast<size_t>(kCellSize) * 4);
  }
  return sheet;
}

TextExtent measure_text(std::string_view text, int size_px) {
  const double f = size_px / static_cast<double>(kCellSize);
  const int advance = static_cast<int>(std::lround(kGlyphAdvance * f));
  TextExtent e;
  e.height = size_px;
  if (!text.empty())
    e.width = advance * (static_cast<int>(text.size()) - 1) + size_px;
  return e;
}

BBox draw_text(Image& canvas, const Image& sheet, std::string_view text,
               int x, int y, int size_px, Rgb color, int thickness) {
  if (canvas.channels != 3) throw std::invalid_argument("draw_text: want an RGB canvas");
  if (sheet.channels != 4 || sheet.width != kSheetCols * kCellSize ||
      sheet.height != kSheetRows * kCellSize)
    throw std::invalid_argument("draw_text: bad glyph sheet");
  if (size_px < 8 || size_px > 256)
    throw std::invalid_argument("draw_text: size outside [8, 256]");
  if (thickness < 1 || thickness > 8)
    throw std::invalid_argument("draw_text: thickness outside [1, 8]");

  const double f = size_px / static_cast<double>(kCellSize);
  const int advance = static_cast<int>(std::lround(kGlyphAdvance * f));
  BBox box{canvas.width, canvas.height, 0, 0};
  int pen = x;
  for (char raw : text) {
    const char c = normalize_char(raw);
    if (glyph_defined(c)) {
      Image cell = cell_sprite(sheet, c);
      if (thickness > 1) cell = dilate_alpha(cell, thickness - 1);
      for (size_t i = 0; i + 3 < cell.data.size(); i += 4) {
        cell.data[i] = color.r;
        cell.data[i + 1] = color.g;
        cell.data[i + 2] = color.b;
      }
      Image scaled = transform_asset(cell, f, 0.0);
      const int xb = std::max(0, pen), xe = std::min(canvas.width, pen + scaled.width);
      const int yb = std::max(0, y), ye = std::min(canvas.height, y + scaled.height);
      for (int cy = yb; cy < ye; ++cy) {
        uint8_t* dst = canvas.px(xb, cy);
        const uint8_t* src = scaled.px(xb - pen, cy - y);
        for (int cx = xb; cx < xe; ++cx, dst += 3, src += 4) {
          if (!src[3]) continue;
          detail::over_px(dst, src);
          box.x0 = std::min(box.x0, cx);
          box.x1 = std::max(box.x1, cx + 1);
          box.y0 = std::min(box.y0, cy);
          box.y1 = std::max(box.y1, cy + 1);
        }
      }
    }
    pen += advance;
  }
  if (box.x1 <= box.x0) return {};
  return box;
}

}  // namespace collage
