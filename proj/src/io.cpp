#include "collage/io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <jpeglib.h>
#include <png.h>

namespace collage {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  f.seekg(0, std::ios::end);
  auto n = static_cast<size_t>(f.tellg());
  f.seekg(0);
  std::vector<uint8_t> buf(n);
  if (n && !f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n)))
    throw IoError("short read on " + path);
  return buf;
}

void write_file(const std::string& path, const uint8_t* bytes, size_t size) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  if (size) f.write(reinterpret_cast<const char*>(bytes), static_cast<std::streamsize>(size));
  if (!f) throw IoError("short write on " + path);
}

namespace {

struct PngReadCtx {
  const uint8_t* data;
  size_t size;
  size_t pos;
};

void png_read_fn(png_structp png, png_bytep out, png_size_t want) {
  auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
  if (ctx->pos + want > ctx->size) png_error(png, "truncated png");
  std::memcpy(out, ctx->data + ctx->pos, want);
  ctx->pos += want;
}

void png_write_fn(png_structp png, png_bytep in, png_size_t n) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), in, in + n);
}

void png_flush_fn(png_structp) {}

Image decode_png_bytes(const uint8_t* bytes, size_t size) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  Image img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("invalid png data");
  }
  PngReadCtx ctx{bytes, size, 0};
  png_set_read_fn(png, &ctx, png_read_fn);
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA ||
      (color == PNG_COLOR_TYPE_GRAY && png_get_valid(png, info, PNG_INFO_tRNS)))
    png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  int channels = png_get_channels(png, info);
  if (channels == 2) channels = 4;  // gray+alpha expanded above
  img = Image(static_cast<int>(w), static_cast<int>(h), channels);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.row(static_cast<int>(y));
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

Image decode_jpeg_bytes(const uint8_t* bytes, size_t size) {
  jpeg_decompress_struct cinfo{};
  jpeg_error_mgr jerr{};
  cinfo.err = jpeg_std_error(&jerr);
  jerr.error_exit = [](j_common_ptr ci) {
    char msg[JMSG_LENGTH_MAX];
    (*ci->err->format_message)(ci, msg);
    throw IoError(std::string("jpeg: ") + msg);
  };
  jpeg_create_decompress(&cinfo);
  Image img;
  try {
    jpeg_mem_src(&cinfo, const_cast<uint8_t*>(bytes), static_cast<unsigned long>(size));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    img = Image(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height), 3);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPROW row = img.row(static_cast<int>(cinfo.output_scanline));
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
  } catch (...) {
    jpeg_destroy_decompress(&cinfo);
    throw;
  }
  jpeg_destroy_decompress(&cinfo);
  return img;
}

}  // namespace

Image decode_image(const uint8_t* bytes, size_t size) {
  if (size >= 8 && std::memcmp(bytes, "\x89PNG\r\n\x1a\n", 8) == 0)
    return decode_png_bytes(bytes, size);
  if (size >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8)
    return decode_jpeg_bytes(bytes, size);
  throw IoError("unrecognized image format");
}

Image load_image(const std::string& path) {
  auto bytes = read_file(path);
  try {
    return decode_image(bytes.data(), bytes.size());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::vector<uint8_t> encode_png(const Image& img, int compression_level) {
  if (img.empty() || (img.channels != 1 && img.channels != 3 && img.channels != 4))
    throw IoError("encode_png: unsupported image");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  std::vector<uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png encode failed");
  }
  png_set_write_fn(png, &out, png_write_fn, png_flush_fn);
  png_set_compression_level(png, compression_level);
  png_set_filter(png, 0, compression_level <= 1 ? PNG_FILTER_SUB : PNG_ALL_FILTERS);
  int color = img.channels == 1   ? PNG_COLOR_TYPE_GRAY
              : img.channels == 3 ? PNG_COLOR_TYPE_RGB
                                  : PNG_COLOR_TYPE_RGBA;
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8, color,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, const_cast<png_bytep>(img.row(y)));
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  return out;
}

void save_png(const std::string& path, const Image& img, int compression_level) {
  auto bytes = encode_png(img, compression_level);
  write_file(path, bytes.data(), bytes.size());
}

std::vector<uint8_t> encode_jpeg(const Image& img, int quality) {
  Image rgb = img.channels == 3 ? img : expand_to_rgb(img);
  jpeg_compress_struct cinfo{};
  jpeg_error_mgr jerr{};
  cinfo.err = jpeg_std_error(&jerr);
  jerr.error_exit = [](j_common_ptr ci) {
    char msg[JMSG_LENGTH_MAX];
    (*ci->err->format_message)(ci, msg);
    throw IoError(std::string("jpeg: ") + msg);
  };
  jpeg_create_compress(&cinfo);
  unsigned char* mem = nullptr;
  unsigned long mem_size = 0;
  try {
    jpeg_mem_dest(&cinfo, &mem, &mem_size);
    cinfo.image_width = static_cast<JDIMENSION>(rgb.width);
    cinfo.image_height = static_cast<JDIMENSION>(rgb.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
      JSAMPROW row = rgb.row(static_cast<int>(cinfo.next_scanline));
      jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
  } catch (...) {
    jpeg_destroy_compress(&cinfo);
    if (mem) free(mem);
    throw;
  }
  std::vector<uint8_t> out(mem, mem + mem_size);
  jpeg_destroy_compress(&cinfo);
  free(mem);
  return out;
}

void save_jpeg(const std::string& path, const Image& img, int quality) {
  auto bytes = encode_jpeg(img, quality);
  write_file(path, bytes.data(), bytes.size());
}

}  // namespace collage
