#pragma once

#include <png.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "roomkit/errors.hpp"

namespace roomkit {

struct ImageGray16 {
  int width = 0, height = 0;
  std::vector<uint16_t> pixels;  // row-major
  uint16_t at(int u, int v) const { return pixels[size_t(v) * width + u]; }
};

struct ImageRgb8 {
  int width = 0, height = 0;
  std::vector<std::array<uint8_t, 3>> pixels;  // row-major
  const std::array<uint8_t, 3>& at(int u, int v) const {
    return pixels[size_t(v) * width + u];
  }
};

namespace detail {

struct PngReadGuard {
  FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadGuard() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriteGuard {
  FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteGuard() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

inline void png_open_read(PngReadGuard& g, const std::filesystem::path& path) {
  g.fp = std::fopen(path.string().c_str(), "rb");
  if (!g.fp) throw MissingFile("cannot open PNG: " + path.string());
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  g.info = g.png ? png_create_info_struct(g.png) : nullptr;
  if (!g.png || !g.info) throw IoError("libpng init failed");
}

}  // namespace detail

/// 16-bit grayscale PNG, host byte order in memory.
inline ImageGray16 read_png_gray16(const std::filesystem::path& path) {
  detail::PngReadGuard g;
  detail::png_open_read(g, path);
  if (setjmp(png_jmpbuf(g.png))) {
    throw ParseError("failed to decode PNG: " + path.string());
  }
  png_init_io(g.png, g.fp);
  png_read_info(g.png, g.info);

  const int depth = png_get_bit_depth(g.png, g.info);
  const int color = png_get_color_type(g.png, g.info);
  if (depth != 16 || color != PNG_COLOR_TYPE_GRAY) {
    throw ParseError("expected 16-bit grayscale PNG: " + path.string());
  }
  png_set_swap(g.png);  // PNG is big-endian on disk

  ImageGray16 img;
  img.width = static_cast<int>(png_get_image_width(g.png, g.info));
  img.height = static_cast<int>(png_get_image_height(g.png, g.info));
  img.pixels.resize(size_t(img.width) * img.height);
  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = reinterpret_cast<png_bytep>(&img.pixels[size_t(v) * img.width]);
  }
  png_read_image(g.png, rows.data());
  png_read_end(g.png, nullptr);
  return img;
}

inline void write_png_gray16(const ImageGray16& img,
                             const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != size_t(img.width) * img.height) {
    throw InvalidArgument("write_png_gray16: inconsistent image buffer");
  }
  detail::PngWriteGuard g;
  g.fp = std::fopen(path.string().c_str(), "wb");
  if (!g.fp) throw IoError("cannot write PNG: " + path.string());
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  g.info = g.png ? png_create_info_struct(g.png) : nullptr;
  if (!g.png || !g.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("failed to encode PNG: " + path.string());
  }
  png_init_io(g.png, g.fp);
  png_set_IHDR(g.png, g.info, img.width, img.height, 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);
  png_set_swap(g.png);
  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = reinterpret_cast<png_bytep>(
        const_cast<uint16_t*>(&img.pixels[size_t(v) * img.width]));
  }
  png_write_image(g.png, rows.data());
  png_write_end(g.png, nullptr);
}

/// 8-bit color PNG. Gray and alpha variants are expanded/stripped to RGB.
inline ImageRgb8 read_png_rgb8(const std::filesystem::path& path) {
  detail::PngReadGuard g;
  detail::png_open_read(g, path);
  if (setjmp(png_jmpbuf(g.png))) {
    throw ParseError("failed to decode PNG: " + path.string());
  }
  png_init_io(g.png, g.fp);
  png_read_info(g.png, g.info);

  png_set_strip_16(g.png);
  png_set_palette_to_rgb(g.png);
  png_set_expand_gray_1_2_4_to_8(g.png);
  png_set_strip_alpha(g.png);
  png_set_gray_to_rgb(g.png);
  png_read_update_info(g.png, g.info);

  if (png_get_channels(g.png, g.info) != 3 ||
      png_get_bit_depth(g.png, g.info) != 8) {
    throw ParseError("expected an 8-bit color PNG: " + path.string());
  }

  ImageRgb8 img;
  img.width = static_cast<int>(png_get_image_width(g.png, g.info));
  img.height = static_cast<int>(png_get_image_height(g.png, g.info));
  img.pixels.resize(size_t(img.width) * img.height);
  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] =
        reinterpret_cast<png_bytep>(img.pixels[size_t(v) * img.width].data());
  }
  png_read_image(g.png, rows.data());
  png_read_end(g.png, nullptr);
  return img;
}

inline void write_png_rgb8(const ImageRgb8& img,
                           const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != size_t(img.width) * img.height) {
    throw InvalidArgument("write_png_rgb8: inconsistent image buffer");
  }
  detail::PngWriteGuard g;
  g.fp = std::fopen(path.string().c_str(), "wb");
  if (!g.fp) throw IoError("cannot write PNG: " + path.string());
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  g.info = g.png ? png_create_info_struct(g.png) : nullptr;
  if (!g.png || !g.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("failed to encode PNG: " + path.string());
  }
  png_init_io(g.png, g.fp);
  png_set_IHDR(g.png, g.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);
  std::vector<png_bytep> rows(img.height);
  for (int v = 0; v < img.height; ++v) {
    rows[v] = reinterpret_cast<png_bytep>(const_cast<uint8_t*>(
        img.pixels[size_t(v) * img.width].data()));
  }
  png_write_image(g.png, rows.data());
  png_write_end(g.png, nullptr);
}

}  // namespace roomkit
