#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "roomkit/core/point_cloud.hpp"
#include "roomkit/errors.hpp"

namespace roomkit {

inline constexpr const char* kFloorCategory = "floor";
inline constexpr const char* kWallCategory = "wall";

struct Instance {
  int id = 0;
  std::string category;
  std::vector<size_t> indices;  // ascending, disjoint across instances
};

/// A point cloud partitioned into labeled instances (walls, floor,
/// furniture categories). Not every point has to be labeled.
struct SegmentedScene {
  PointCloud cloud;
  std::vector<Instance> instances;  // ascending instance id

  const Instance* find(int id) const {
    for (const auto& inst : instances) {
      if (inst.id == id) return &inst;
    }
    return nullptr;
  }

  PointCloud instance_cloud(const Instance& inst) const {
    return cloud.subset(inst.indices);
  }

  /// Merged points of every instance with the given category.
  PointCloud category_cloud(const std::string& category) const {
    PointCloud out;
    for (const auto& inst : instances) {
      if (inst.category != category) continue;
      out.append(cloud.subset(inst.indices));
    }
    return out;
  }

  /// Points of every instance whose category differs from `category`.
  PointCloud complement_cloud(const std::string& category) const {
    PointCloud out;
    for (const auto& inst : instances) {
      if (inst.category == category) continue;
      out.append(cloud.subset(inst.indices));
    }
    return out;
  }
};

/// Reads a label file mapping point index -> (instance id, category):
///
///   # comment
///   <point_index> <instance_id> <category>
///
/// Duplicate assignments keep the first one (warning); indices beyond the
/// cloud raise IndexOutOfRange.
inline SegmentedScene read_labels(const std::filesystem::path& path,
                                  PointCloud cloud) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open labels: " + path.string());

  std::vector<char> assigned(cloud.size(), 0);
  std::map<int, Instance> by_id;
  size_t duplicates = 0;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long index;
    int instance_id;
    std::string category;
    ls >> index >> instance_id >> category;
    if (ls.fail() || category.empty()) {
      throw ParseError("labels: malformed line " + std::to_string(line_no) +
                       " in " + path.string());
    }
    if (index < 0 || static_cast<size_t>(index) >= cloud.size()) {
      throw IndexOutOfRange("labels: point index " + std::to_string(index) +
                            " out of range for cloud of size " +
                            std::to_string(cloud.size()) + " (line " +
                            std::to_string(line_no) + ")");
    }
    if (assigned[static_cast<size_t>(index)]) {
      ++duplicates;
      continue;  // first assignment wins
    }
    assigned[static_cast<size_t>(index)] = 1;

    auto [it, inserted] = by_id.try_emplace(instance_id);
    Instance& inst = it->second;
    if (inserted) {
      inst.id = instance_id;
      inst.category = category;
    } else if (inst.category != category) {
      warn("labels: instance " + std::to_string(instance_id) +
           " remapped category '" + category + "' -> keeping '" +
           inst.category + "' (line " + std::to_string(line_no) + ")");
    }
    inst.indices.push_back(static_cast<size_t>(index));
  }
  if (duplicates > 0) {
    warn("labels: ignored " + std::to_string(duplicates) +
         " duplicate point assignment(s) in " + path.string());
  }

  SegmentedScene scene;
  scene.cloud = std::move(cloud);
  scene.instances.reserve(by_id.size());
  for (auto& [id, inst] : by_id) {
    std::sort(inst.indices.begin(), inst.indices.end());
    scene.instances.push_back(std::move(inst));
  }
  return scene;
}

inline void write_labels(const SegmentedScene& scene,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write labels: " + path.string());
  out << "# roomkit labels v1\n";
  for (const auto& inst : scene.instances) {
    for (size_t index : inst.indices) {
      out << index << " " << inst.id << " " << inst.category << "\n";
    }
  }
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace roomkit
