#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roomkit/core/point_cloud.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

enum class PlyFormat { kBinaryLittleEndian, kAscii };

namespace detail {

struct PlyProperty {
  std::string name;
  std::string type;        // scalar type, or item type for lists
  std::string count_type;  // non-empty marks a list property
};

struct PlyElement {
  std::string name;
  size_t count = 0;
  std::vector<PlyProperty> properties;
};

inline size_t ply_type_size(const std::string& t, const std::string& context) {
  if (t == "char" || t == "int8" || t == "uchar" || t == "uint8") return 1;
  if (t == "short" || t == "int16" || t == "ushort" || t == "uint16") return 2;
  if (t == "int" || t == "int32" || t == "uint" || t == "uint32") return 4;
  if (t == "float" || t == "float32") return 4;
  if (t == "double" || t == "float64") return 8;
  throw ParseError("ply: unknown property type '" + t + "' in " + context);
}

inline double ply_read_scalar_binary(std::istream& in, const std::string& t,
                                     const std::string& context) {
  unsigned char buf[8];
  const size_t n = ply_type_size(t, context);
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  if (!in) throw ParseError("ply: truncated data in " + context);
  if (t == "char" || t == "int8") return static_cast<int8_t>(buf[0]);
  if (t == "uchar" || t == "uint8") return buf[0];
  auto le = [&](int k) {
    uint64_t v = 0;
    for (int i = k - 1; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
  };
  if (t == "short" || t == "int16") return static_cast<int16_t>(le(2));
  if (t == "ushort" || t == "uint16") return static_cast<uint16_t>(le(2));
  if (t == "int" || t == "int32") return static_cast<int32_t>(le(4));
  if (t == "uint" || t == "uint32") return static_cast<uint32_t>(le(4));
  if (t == "float" || t == "float32") {
    uint32_t v = static_cast<uint32_t>(le(4));
    float f;
    std::memcpy(&f, &v, 4);
    return f;
  }
  uint64_t v = le(8);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace detail

/// Reads an ascii or binary-little-endian PLY point cloud. Vertex positions
/// are required; uchar red/green/blue are mapped to [0,1] colors. Unknown
/// elements and extra properties are skipped.
inline PointCloud read_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open point cloud: " + path.string());

  std::string line;
  size_t line_no = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) {
      throw ParseError("ply: unexpected end of header at line " +
                       std::to_string(line_no) + " in " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return line;
  };

  if (next_line() != "ply") {
    throw ParseError("ply: missing 'ply' magic in " + path.string());
  }

  bool binary = false;
  bool format_seen = false;
  std::vector<detail::PlyElement> elements;
  while (true) {
    std::istringstream ls(next_line());
    std::string keyword;
    ls >> keyword;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info") {
      continue;
    }
    if (keyword == "format") {
      std::string fmt, version;
      ls >> fmt >> version;
      if (fmt == "ascii") {
        binary = false;
      } else if (fmt == "binary_little_endian") {
        binary = true;
      } else {
        throw ParseError("ply: unsupported format '" + fmt + "' in " +
                         path.string());
      }
      format_seen = true;
    } else if (keyword == "element") {
      detail::PlyElement el;
      ls >> el.name >> el.count;
      if (ls.fail() || el.name.empty()) {
        throw ParseError("ply: malformed element declaration at line " +
                         std::to_string(line_no) + " in " + path.string());
      }
      elements.push_back(el);
    } else if (keyword == "property") {
      if (elements.empty()) {
        throw ParseError("ply: property before any element at line " +
                         std::to_string(line_no) + " in " + path.string());
      }
      detail::PlyProperty prop;
      std::string first;
      ls >> first;
      if (first == "list") {
        ls >> prop.count_type >> prop.type >> prop.name;
      } else {
        prop.type = first;
        ls >> prop.name;
      }
      if (ls.fail() || prop.name.empty()) {
        throw ParseError("ply: malformed property in element '" +
                         elements.back().name + "' at line " +
                         std::to_string(line_no) + " in " + path.string());
      }
      detail::ply_type_size(prop.type, "element '" + elements.back().name +
                                           "' of " + path.string());
      elements.back().properties.push_back(prop);
    } else if (keyword == "end_header") {
      break;
    } else {
      throw ParseError("ply: unknown header keyword '" + keyword +
                       "' at line " + std::to_string(line_no) + " in " +
                       path.string());
    }
  }
  if (!format_seen) {
    throw ParseError("ply: header missing format line in " + path.string());
  }

  PointCloud cloud;
  for (const auto& el : elements) {
    const bool is_vertex = el.name == "vertex";
    int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
    for (size_t p = 0; p < el.properties.size(); ++p) {
      const auto& prop = el.properties[p];
      if (!prop.count_type.empty()) continue;
      if (prop.name == "x") ix = static_cast<int>(p);
      if (prop.name == "y") iy = static_cast<int>(p);
      if (prop.name == "z") iz = static_cast<int>(p);
      if (prop.name == "red") ir = static_cast<int>(p);
      if (prop.name == "green") ig = static_cast<int>(p);
      if (prop.name == "blue") ib = static_cast<int>(p);
    }
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) {
      throw ParseError("ply: element 'vertex' lacks x/y/z in " +
                       path.string());
    }
    const bool has_rgb = ir >= 0 && ig >= 0 && ib >= 0;
    if (is_vertex) {
      cloud.points.reserve(el.count);
      if (has_rgb) cloud.colors.reserve(el.count);
    }

    const std::string context = "element '" + el.name + "' of " + path.string();
    std::vector<double> row(el.properties.size(), 0.0);
    for (size_t r = 0; r < el.count; ++r) {
      if (binary) {
        for (size_t p = 0; p < el.properties.size(); ++p) {
          const auto& prop = el.properties[p];
          if (!prop.count_type.empty()) {
            const double n =
                detail::ply_read_scalar_binary(in, prop.count_type, context);
            for (size_t k = 0; k < static_cast<size_t>(n); ++k) {
              detail::ply_read_scalar_binary(in, prop.type, context);
            }
          } else {
            row[p] = detail::ply_read_scalar_binary(in, prop.type, context);
          }
        }
      } else {
        std::string data_line;
        if (!std::getline(in, data_line)) {
          throw ParseError("ply: truncated data in " + context);
        }
        std::istringstream ds(data_line);
        for (size_t p = 0; p < el.properties.size(); ++p) {
          const auto& prop = el.properties[p];
          if (!prop.count_type.empty()) {
            size_t n = 0;
            ds >> n;
            double skip;
            for (size_t k = 0; k < n; ++k) ds >> skip;
            if (ds.fail()) throw ParseError("ply: bad list row in " + context);
          } else {
            ds >> row[p];
            if (ds.fail()) {
              throw ParseError("ply: bad value for property '" + prop.name +
                               "' in " + context);
            }
          }
        }
      }
      if (is_vertex) {
        cloud.points.push_back({row[ix], row[iy], row[iz]});
        if (has_rgb) {
          cloud.colors.push_back(
              {row[ir] / 255.0, row[ig] / 255.0, row[ib] / 255.0});
        }
      }
    }
  }
  return cloud;
}

/// Writes float32 positions plus optional uchar colors.
inline void write_point_cloud(const PointCloud& cloud,
                              const std::filesystem::path& path,
                              PlyFormat format = PlyFormat::kBinaryLittleEndian) {
  cloud.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write point cloud: " + path.string());

  const bool colored = cloud.has_colors();
  out << "ply\n";
  out << "format "
      << (format == PlyFormat::kAscii ? "ascii" : "binary_little_endian")
      << " 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  if (colored) {
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  }
  out << "end_header\n";

  auto to_byte = [](double c) {
    return static_cast<unsigned char>(
        std::clamp(std::lround(c * 255.0), 0L, 255L));
  };

  if (format == PlyFormat::kAscii) {
    out.precision(9);
    for (size_t i = 0; i < cloud.size(); ++i) {
      const Vec3& p = cloud.points[i];
      out << static_cast<float>(p.x()) << " " << static_cast<float>(p.y())
          << " " << static_cast<float>(p.z());
      if (colored) {
        const Vec3& c = cloud.colors[i];
        out << " " << static_cast<int>(to_byte(c.x())) << " "
            << static_cast<int>(to_byte(c.y())) << " "
            << static_cast<int>(to_byte(c.z()));
      }
      out << "\n";
    }
  } else {
    for (size_t i = 0; i < cloud.size(); ++i) {
      const float xyz[3] = {static_cast<float>(cloud.points[i].x()),
                            static_cast<float>(cloud.points[i].y()),
                            static_cast<float>(cloud.points[i].z())};
      out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
      if (colored) {
        const unsigned char rgb[3] = {to_byte(cloud.colors[i].x()),
                                      to_byte(cloud.colors[i].y()),
                                      to_byte(cloud.colors[i].z())};
        out.write(reinterpret_cast<const char*>(rgb), sizeof(rgb));
      }
    }
  }
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace roomkit
