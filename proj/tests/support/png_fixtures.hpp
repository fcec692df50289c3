// Raw libpng writers for 8-bit grayscale, 16-bit grayscale and 8-bit RGB
// fixtures. Independent of the library's own encoder so reader tests are not
// circular.

#pragma once

#include <png.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

inline void write_png_raw(const std::string& path, int width, int height, int bit_depth,
                          int color_type, const std::vector<unsigned char>& bytes) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_png_raw: cannot open " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("write_png_raw: libpng failure");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  const std::size_t rowbytes = static_cast<std::size_t>(width) * channels * (bit_depth / 8);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(bytes.data()) + y * rowbytes;
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

inline void write_gray8_png(const std::string& path, int width, int height,
                            const std::vector<unsigned char>& values) {
  write_png_raw(path, width, height, 8, PNG_COLOR_TYPE_GRAY, values);
}

inline void write_gray16_png(const std::string& path, int width, int height,
                             const std::vector<unsigned short>& values) {
  std::vector<unsigned char> bytes;
  bytes.reserve(values.size() * 2);
  for (unsigned short v : values) {
    bytes.push_back(static_cast<unsigned char>(v >> 8));
    bytes.push_back(static_cast<unsigned char>(v & 0xff));
  }
  write_png_raw(path, width, height, 16, PNG_COLOR_TYPE_GRAY, bytes);
}

inline void write_rgb8_png(const std::string& path, int width, int height,
                           const std::vector<unsigned char>& rgb_bytes) {
  write_png_raw(path, width, height, 8, PNG_COLOR_TYPE_RGB, rgb_bytes);
}

}  // namespace fixtures
