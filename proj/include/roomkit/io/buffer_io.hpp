#pragma once

#include <cstring>
#include <filesystem>
#include <fstream>

#include "roomkit/errors.hpp"
#include "roomkit/io/png_io.hpp"
#include "roomkit/losses/losses.hpp"

namespace roomkit {

/// Normal maps as 8-bit RGB PNG: component n in [-1,1] maps to
/// round((n+1)/2*255). Invalid pixels encode as (128,128,128), which
/// decodes to a near-zero vector. On read, anything with norm < 0.5 is
/// treated as invalid; valid vectors are renormalized to unit length to
/// undo quantization.
inline void write_normal_map_png(const NormalMap& map,
                                 const std::filesystem::path& path) {
  ImageRgb8 img;
  img.width = map.width;
  img.height = map.height;
  img.pixels.resize(size_t(map.width) * map.height);
  auto encode = [](double v) {
    return static_cast<uint8_t>(
        std::clamp(std::lround((v + 1.0) * 0.5 * 255.0), 0L, 255L));
  };
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    if (map.valid[i]) {
      img.pixels[i] = {encode(map.data[i].x()), encode(map.data[i].y()),
                       encode(map.data[i].z())};
    } else {
      img.pixels[i] = {128, 128, 128};
    }
  }
  write_png_rgb8(img, path);
}

inline NormalMap read_normal_map_png(const std::filesystem::path& path) {
  const ImageRgb8 img = read_png_rgb8(path);
  NormalMap map;
  map.height = img.height;
  map.width = img.width;
  map.data.resize(img.pixels.size());
  map.valid.resize(img.pixels.size());
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    const Vec3 raw(img.pixels[i][0] / 255.0 * 2.0 - 1.0,
                   img.pixels[i][1] / 255.0 * 2.0 - 1.0,
                   img.pixels[i][2] / 255.0 * 2.0 - 1.0);
    const double norm = raw.norm();
    if (norm < 0.5) {
      map.data[i] = Vec3::Zero();
      map.valid[i] = 0;
    } else {
      map.data[i] = raw / norm;
      map.valid[i] = 1;
    }
  }
  return map;
}

/// Depth maps as 16-bit grayscale PNG with a configurable divisor
/// (raw = round(depth * divisor); raw 0 = invalid).
inline void write_depth_map_png(const DepthMap& map,
                                const std::filesystem::path& path,
                                double divisor = 5000.0) {
  ImageGray16 img;
  img.width = map.width;
  img.height = map.height;
  img.pixels.resize(size_t(map.width) * map.height);
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    if (!map.valid[i]) {
      img.pixels[i] = 0;
      continue;
    }
    img.pixels[i] = static_cast<uint16_t>(
        std::clamp(std::lround(map.data[i] * divisor), 0L, 65535L));
  }
  write_png_gray16(img, path);
}

inline DepthMap read_depth_map_png(const std::filesystem::path& path,
                                   double divisor = 5000.0) {
  const ImageGray16 img = read_png_gray16(path);
  DepthMap map;
  map.height = img.height;
  map.width = img.width;
  map.data.resize(img.pixels.size());
  map.valid.resize(img.pixels.size());
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    map.valid[i] = img.pixels[i] != 0;
    map.data[i] = img.pixels[i] / divisor;
  }
  return map;
}

// ---------------------------------------------------------------------------
// Raw float buffers ("RKFB"): lossless float32 storage with an explicit
// mask plane. Layout (little-endian):
//   char[4]  magic "RKFB"
//   u32      version (1)
//   u32      kind (0 = depth, 1 = normal)
//   u32      height, u32 width
//   f32      data[height*width*channels]   (channels: depth 1, normal 3)
//   u8       mask[height*width]            (1 = valid)
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr uint32_t kRkfbVersion = 1;

inline void rkfb_write_header(std::ofstream& out, uint32_t kind, uint32_t h,
                              uint32_t w) {
  out.write("RKFB", 4);
  const uint32_t fields[4] = {kRkfbVersion, kind, h, w};
  out.write(reinterpret_cast<const char*>(fields), sizeof(fields));
}

inline void rkfb_read_header(std::ifstream& in, uint32_t expected_kind,
                             uint32_t& h, uint32_t& w,
                             const std::string& path) {
  char magic[4];
  uint32_t fields[4];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(fields), sizeof(fields));
  if (!in || std::memcmp(magic, "RKFB", 4) != 0) {
    throw ParseError("rkfb: bad magic in " + path);
  }
  if (fields[0] != kRkfbVersion) {
    throw ParseError("rkfb: unsupported version in " + path);
  }
  if (fields[1] != expected_kind) {
    throw ParseError("rkfb: buffer kind mismatch in " + path);
  }
  h = fields[2];
  w = fields[3];
  if (h == 0 || w == 0 || size_t(h) * w > (1u << 28)) {
    throw ParseError("rkfb: implausible dimensions in " + path);
  }
}

}  // namespace detail

inline void write_depth_map_raw(const DepthMap& map,
                                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write buffer: " + path.string());
  detail::rkfb_write_header(out, 0, map.height, map.width);
  for (double d : map.data) {
    const float f = static_cast<float>(d);
    out.write(reinterpret_cast<const char*>(&f), 4);
  }
  out.write(reinterpret_cast<const char*>(map.valid.data()),
            static_cast<std::streamsize>(map.valid.size()));
  if (!out) throw IoError("short write: " + path.string());
}

inline DepthMap read_depth_map_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open buffer: " + path.string());
  uint32_t h = 0, w = 0;
  detail::rkfb_read_header(in, 0, h, w, path.string());
  DepthMap map;
  map.height = static_cast<int>(h);
  map.width = static_cast<int>(w);
  map.data.resize(size_t(h) * w);
  map.valid.resize(size_t(h) * w);
  for (double& d : map.data) {
    float f;
    in.read(reinterpret_cast<char*>(&f), 4);
    d = f;
  }
  in.read(reinterpret_cast<char*>(map.valid.data()),
          static_cast<std::streamsize>(map.valid.size()));
  if (!in) throw ParseError("rkfb: truncated buffer in " + path.string());
  return map;
}

inline void write_normal_map_raw(const NormalMap& map,
                                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write buffer: " + path.string());
  detail::rkfb_write_header(out, 1, map.height, map.width);
  for (const Vec3& n : map.data) {
    const float f[3] = {static_cast<float>(n.x()), static_cast<float>(n.y()),
                        static_cast<float>(n.z())};
    out.write(reinterpret_cast<const char*>(f), 12);
  }
  out.write(reinterpret_cast<const char*>(map.valid.data()),
            static_cast<std::streamsize>(map.valid.size()));
  if (!out) throw IoError("short write: " + path.string());
}

inline NormalMap read_normal_map_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open buffer: " + path.string());
  uint32_t h = 0, w = 0;
  detail::rkfb_read_header(in, 1, h, w, path.string());
  NormalMap map;
  map.height = static_cast<int>(h);
  map.width = static_cast<int>(w);
  map.data.resize(size_t(h) * w);
  map.valid.resize(size_t(h) * w);
  for (Vec3& n : map.data) {
    float f[3];
    in.read(reinterpret_cast<char*>(f), 12);
    n = {f[0], f[1], f[2]};
  }
  in.read(reinterpret_cast<char*>(map.valid.data()),
          static_cast<std::streamsize>(map.valid.size()));
  if (!in) throw ParseError("rkfb: truncated buffer in " + path.string());
  return map;
}

}  // namespace roomkit
