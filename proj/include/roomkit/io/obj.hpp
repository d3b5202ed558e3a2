#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roomkit/core/mesh.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

/// Reads a Wavefront OBJ mesh (v/vt/vn/f subset). Polygonal faces are
/// fan-triangulated, negative indices resolve relative to the vertices seen
/// so far, and unknown directives are skipped with a warning. Zero-area
/// triangles are kept but flagged.
inline TriangleMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open mesh: " + path.string());

  TriangleMesh mesh;
  std::string line;
  size_t line_no = 0;
  size_t skipped_directives = 0;
  std::string first_skipped;

  auto resolve_index = [&](long idx) -> int {
    const long n = static_cast<long>(mesh.vertices.size());
    long v = idx > 0 ? idx - 1 : n + idx;
    if (v < 0 || v >= n) {
      throw ParseError("obj: vertex index " + std::to_string(idx) +
                       " out of range at line " + std::to_string(line_no) +
                       " in " + path.string());
    }
    return static_cast<int>(v);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag.empty() || tag[0] == '#') continue;

    if (tag == "v") {
      double x, y, z;
      ls >> x >> y >> z;
      if (ls.fail()) {
        throw ParseError("obj: malformed vertex at line " +
                         std::to_string(line_no) + " in " + path.string());
      }
      mesh.vertices.push_back({x, y, z});
    } else if (tag == "vt" || tag == "vn" || tag == "o" || tag == "g" ||
               tag == "s" || tag == "usemtl" || tag == "mtllib") {
      // Parsed and discarded; positions are all the pipeline consumes.
      continue;
    } else if (tag == "f") {
      std::vector<int> corners;
      std::string token;
      while (ls >> token) {
        // Formats: i, i/j, i//k, i/j/k — the leading index is the vertex.
        const size_t slash = token.find('/');
        const std::string head =
            slash == std::string::npos ? token : token.substr(0, slash);
        try {
          corners.push_back(resolve_index(std::stol(head)));
        } catch (const std::invalid_argument&) {
          throw ParseError("obj: malformed face token '" + token +
                           "' at line " + std::to_string(line_no) + " in " +
                           path.string());
        }
      }
      if (corners.size() < 3) {
        throw ParseError("obj: face with fewer than 3 vertices at line " +
                         std::to_string(line_no) + " in " + path.string());
      }
      for (size_t k = 2; k < corners.size(); ++k) {
        mesh.triangles.push_back({corners[0], corners[k - 1], corners[k]});
      }
    } else {
      ++skipped_directives;
      if (first_skipped.empty()) first_skipped = tag;
    }
  }
  if (skipped_directives > 0) {
    warn("obj: skipped " + std::to_string(skipped_directives) +
         " unsupported directive(s) (first: '" + first_skipped + "') in " +
         path.string());
  }
  mesh.refresh_degenerate_flags();
  return mesh;
}

inline void write_mesh(const TriangleMesh& mesh,
                       const std::filesystem::path& path,
                       const std::string& object_name = {}) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh: " + path.string());
  out.precision(9);
  if (!object_name.empty()) out << "o " << object_name << "\n";
  for (const Vec3& v : mesh.vertices) {
    out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  }
  if (!out) throw IoError("short write: " + path.string());
}

/// Multi-object OBJ export; each entry becomes an `o` group with shared
/// global vertex numbering.
inline void write_mesh_scene(
    const std::vector<std::pair<std::string, TriangleMesh>>& objects,
    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh scene: " + path.string());
  out.precision(9);
  long offset = 0;
  for (const auto& [name, mesh] : objects) {
    out << "o " << name << "\n";
    for (const Vec3& v : mesh.vertices) {
      out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    }
    for (const auto& t : mesh.triangles) {
      out << "f " << t[0] + 1 + offset << " " << t[1] + 1 + offset << " "
          << t[2] + 1 + offset << "\n";
    }
    offset += static_cast<long>(mesh.vertices.size());
  }
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace roomkit
