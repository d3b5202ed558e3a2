#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roomkit/core/mesh.hpp"
#include "roomkit/core/transform.hpp"
#include "roomkit/errors.hpp"
#include "roomkit/io/obj.hpp"
#include "roomkit/util/hash.hpp"

namespace roomkit {

/// Catalog entry: mesh file plus its canonical orientation convention.
/// Defaults follow the usual CAD convention (+y up, front facing +z).
struct ModelEntry {
  std::string id;
  std::string category;
  std::filesystem::path mesh_path;  // absolute, resolved against the root
  Vec3 up = Vec3::UnitY();
  Vec3 front = Vec3::UnitZ();
};

/// On-disk model catalog: a root directory with one subdirectory per
/// category and an `index.txt` mapping ids to categories and mesh files:
///
///   # roomkit model database v1
///   <id> <category> <relative/path.obj> [up=+y] [front=+z]
struct ModelDatabase {
  std::filesystem::path root;
  std::vector<ModelEntry> entries;

  const ModelEntry* find(const std::string& id) const {
    for (const auto& e : entries) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  std::vector<const ModelEntry*> by_category(const std::string& cat) const {
    std::vector<const ModelEntry*> out;
    for (const auto& e : entries) {
      if (e.category == cat) out.push_back(&e);
    }
    return out;
  }

  bool has_category(const std::string& cat) const {
    return !by_category(cat).empty();
  }
};

namespace detail {

inline Vec3 parse_axis(const std::string& text, const std::string& where) {
  if (text == "+x") return Vec3::UnitX();
  if (text == "-x") return -Vec3::UnitX();
  if (text == "+y") return Vec3::UnitY();
  if (text == "-y") return -Vec3::UnitY();
  if (text == "+z") return Vec3::UnitZ();
  if (text == "-z") return -Vec3::UnitZ();
  throw ParseError("model db: bad axis '" + text + "' " + where);
}

}  // namespace detail

inline ModelDatabase open_model_database(const std::filesystem::path& root) {
  const std::filesystem::path index = root / "index.txt";
  std::ifstream in(index);
  if (!in) throw MissingFile("model db index not found: " + index.string());

  ModelDatabase db;
  db.root = root;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    const std::string where =
        "(line " + std::to_string(line_no) + " of " + index.string() + ")";
    std::istringstream ls(line);
    ModelEntry entry;
    std::string rel;
    ls >> entry.id >> entry.category >> rel;
    if (ls.fail() || rel.empty()) {
      throw ParseError("model db: malformed entry " + where);
    }
    std::string opt;
    while (ls >> opt) {
      if (opt.rfind("up=", 0) == 0) {
        entry.up = detail::parse_axis(opt.substr(3), where);
      } else if (opt.rfind("front=", 0) == 0) {
        entry.front = detail::parse_axis(opt.substr(6), where);
      } else {
        throw ParseError("model db: unknown option '" + opt + "' " + where);
      }
    }
    if (std::abs(entry.up.dot(entry.front)) > 1e-9) {
      throw ParseError("model db: up and front must be orthogonal " + where);
    }
    entry.mesh_path = root / rel;
    if (!std::filesystem::exists(entry.mesh_path)) {
      throw MissingFile("model db: mesh not found: " +
                        entry.mesh_path.string());
    }
    db.entries.push_back(std::move(entry));
  }
  return db;
}

/// Default number of surface samples per catalog model.
inline constexpr size_t kModelSampleCount = 4096;

/// Stable per-model sampling seed, so a model id always yields the same
/// sample cloud (reports stay reproducible across runs and processes).
inline uint64_t model_sample_seed(const std::string& id) {
  return fnv1a64(id) ^ 0x9e3779b97f4a7c15ull;
}

inline PointCloud load_model_samples(const ModelEntry& entry,
                                     size_t count = kModelSampleCount) {
  const TriangleMesh mesh = read_mesh(entry.mesh_path);
  return sample_mesh_surface(mesh, count, model_sample_seed(entry.id));
}

}  // namespace roomkit
