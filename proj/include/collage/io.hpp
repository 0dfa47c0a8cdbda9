#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "collage/image.hpp"

namespace collage {

// Thrown for unreadable, truncated or unsupported image data.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// PNG or JPEG, detected from the file's magic bytes.
Image load_image(const std::string& path);
Image decode_image(const uint8_t* bytes, size_t size);

// Fixed encoder settings so identical pixels give identical bytes.
std::vector<uint8_t> encode_png(const Image& img, int compression_level = 1);
void save_png(const std::string& path, const Image& img, int compression_level = 1);

std::vector<uint8_t> encode_jpeg(const Image& img, int quality = 90);
void save_jpeg(const std::string& path, const Image& img, int quality = 90);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const uint8_t* bytes, size_t size);

}  // namespace collage
