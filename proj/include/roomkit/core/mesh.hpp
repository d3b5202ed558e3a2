#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "roomkit/core/point_cloud.hpp"
#include "roomkit/util/rng.hpp"

namespace roomkit {

/// Indexed triangle mesh. Degenerate (zero-area) triangles are kept but
/// flagged so samplers and area sums can skip them.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<uint8_t> degenerate;

  size_t triangle_count() const { return triangles.size(); }

  double triangle_area(size_t t) const {
    const Vec3& a = vertices[triangles[t][0]];
    const Vec3& b = vertices[triangles[t][1]];
    const Vec3& c = vertices[triangles[t][2]];
    return 0.5 * (b - a).cross(c - a).norm();
  }

  void refresh_degenerate_flags(double area_eps = 1e-12) {
    degenerate.assign(triangles.size(), 0);
    for (size_t t = 0; t < triangles.size(); ++t) {
      if (triangle_area(t) < area_eps) degenerate[t] = 1;
    }
  }

  double surface_area() const {
    double acc = 0.0;
    for (size_t t = 0; t < triangles.size(); ++t) acc += triangle_area(t);
    return acc;
  }

  TriangleMesh transformed(const Mat3& linear, const Vec3& t) const {
    TriangleMesh out = *this;
    for (Vec3& v : out.vertices) v = linear * v + t;
    return out;
  }
};

/// Area-weighted uniform surface sampling. Deterministic for a given seed.
inline PointCloud sample_mesh_surface(const TriangleMesh& mesh, size_t count,
                                      uint64_t seed) {
  std::vector<double> cumulative;
  cumulative.reserve(mesh.triangles.size());
  double total = 0.0;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const bool bad = t < mesh.degenerate.size() && mesh.degenerate[t];
    total += bad ? 0.0 : mesh.triangle_area(t);
    cumulative.push_back(total);
  }
  if (!(total > 1e-18)) {
    throw DegenerateCloud("sample_mesh_surface: mesh has no surface area");
  }

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    const double r = rng.uniform() * total;
    const size_t t = static_cast<size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), r) -
        cumulative.begin());
    const auto& tri = mesh.triangles[std::min(t, mesh.triangles.size() - 1)];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const double su = std::sqrt(rng.uniform());
    const double v = rng.uniform();
    cloud.points.push_back((1.0 - su) * a + su * (1.0 - v) * b + su * v * c);
  }
  return cloud;
}

/// Axis-aligned box centered at the origin, outward windings.
inline TriangleMesh make_box_mesh(const Vec3& size) {
  const double x = 0.5 * size.x(), y = 0.5 * size.y(), z = 0.5 * size.z();
  TriangleMesh m;
  m.vertices = {{-x, -y, -z}, {x, -y, -z}, {x, y, -z}, {-x, y, -z},
                {-x, -y, z},  {x, -y, z},  {x, y, z},  {-x, y, z}};
  m.triangles = {
      {0, 2, 1}, {0, 3, 2},  // -z
      {4, 5, 6}, {4, 6, 7},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {3, 7, 6}, {3, 6, 2},  // +y
      {0, 4, 7}, {0, 7, 3},  // -x
      {1, 2, 6}, {1, 6, 5},  // +x
  };
  m.refresh_degenerate_flags();
  return m;
}

/// Closed cylinder along +y, centered at the origin.
inline TriangleMesh make_cylinder_mesh(double radius, double height,
                                       int segments = 48) {
  TriangleMesh m;
  const double h = 0.5 * height;
  const int n = std::max(3, segments);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * 3.14159265358979323846 * i / n;
    const double cx = radius * std::cos(a);
    const double cz = radius * std::sin(a);
    m.vertices.push_back({cx, -h, cz});
    m.vertices.push_back({cx, h, cz});
  }
  const int bottom_center = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0.0, -h, 0.0});
  const int top_center = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0.0, h, 0.0});

  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
    m.triangles.push_back({b0, t0, t1});
    m.triangles.push_back({b0, t1, b1});
    m.triangles.push_back({bottom_center, b1, b0});
    m.triangles.push_back({top_center, t0, t1});
  }
  m.refresh_degenerate_flags();
  return m;
}

inline TriangleMesh merge_meshes(const TriangleMesh& a,
                                 const TriangleMesh& b) {
  TriangleMesh m = a;
  const int offset = static_cast<int>(m.vertices.size());
  m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& tri : b.triangles) {
    m.triangles.push_back({tri[0] + offset, tri[1] + offset, tri[2] + offset});
  }
  m.refresh_degenerate_flags();
  return m;
}

}  // namespace roomkit
