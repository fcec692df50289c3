// PNG file I/O backed by libpng. Reads 8/16-bit grayscale PNGs (RGB inputs
// are collapsed by unweighted channel mean, alpha is dropped) and writes
// 16-bit grayscale, keeping quantization error within one 16-bit step.

#pragma once

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

#include "ldct/errors.hpp"
#include "ldct/image.hpp"

namespace ldct {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace detail

/// Loads a PNG as a normalized grayscale image: 8-bit samples are divided by
/// 255, 16-bit by 65535; RGB channels are averaged.
inline GrayImage load_image(const std::string& path) {
  detail::FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw io_error("load_image: cannot open '" + path + "'");

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    throw validation_error("load_image: '" + path + "' is not a PNG file");
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("load_image: png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw io_error("load_image: png_create_info_struct failed");
  }

  // Declared before setjmp so their destructors run on the error path.
  std::vector<png_byte> data;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, channels = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("load_image: libpng failed reading '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (width == 0 || height == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw validation_error("load_image: zero-dimension image '" + path + "'");
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  (void)png_set_interlace_handling(png);
  png_read_update_info(png, info);

  bit_depth = png_get_bit_depth(png, info);
  channels = png_get_channels(png, info);
  if (bit_depth != 8 && bit_depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw validation_error("load_image: unsupported bit depth in '" + path + "'");
  }
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw validation_error("load_image: unsupported channel count in '" + path + "'");
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  data.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  GrayImage out(static_cast<int>(width), static_cast<int>(height));
  const double maxval = bit_depth == 8 ? 255.0 : 65535.0;
  for (png_uint_32 y = 0; y < height; ++y) {
    const png_byte* row = data.data() + y * rowbytes;
    for (png_uint_32 x = 0; x < width; ++x) {
      double sum = 0.0;
      for (int c = 0; c < channels; ++c) {
        const std::size_t i = (static_cast<std::size_t>(x) * channels + c);
        // 16-bit PNG samples are big-endian on the wire.
        const double v = bit_depth == 8
                             ? row[i]
                             : static_cast<double>((row[2 * i] << 8) | row[2 * i + 1]);
        sum += v;
      }
      out.at(static_cast<int>(x), static_cast<int>(y)) = sum / channels / maxval;
    }
  }
  return out;
}

/// Writes a 16-bit grayscale PNG. Round-tripping through load_image changes
/// each pixel by at most one 16-bit quantization step (1/65535).
inline void save_image(const GrayImage& img, const std::string& path) {
  require_valid(img);
  detail::FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw io_error("save_image: cannot open '" + path + "' for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("save_image: png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw io_error("save_image: png_create_info_struct failed");
  }

  std::vector<png_byte> data;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw io_error("save_image: libpng failed writing '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t rowbytes = static_cast<std::size_t>(img.width) * 2;
  data.resize(rowbytes * img.height);
  rows.resize(img.height);
  for (int y = 0; y < img.height; ++y) {
    png_byte* row = data.data() + static_cast<std::size_t>(y) * rowbytes;
    rows[y] = row;
    for (int x = 0; x < img.width; ++x) {
      const auto q = static_cast<unsigned>(std::lround(img.at(x, y) * 65535.0));
      row[2 * x] = static_cast<png_byte>(q >> 8);
      row[2 * x + 1] = static_cast<png_byte>(q & 0xff);
    }
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  if (std::fflush(fp.get()) != 0) throw io_error("save_image: flush failed for '" + path + "'");
}

}  // namespace ldct
