#include <catch2/catch_amalgamated.hpp>

#include "roomkit/core/obb.hpp"
#include "test_util.hpp"

using namespace roomkit;
using rktest::Rng;

namespace {

Obb axis_aligned(const Vec3& center, const Vec3& half) {
  Obb box;
  box.center = center;
  box.half_extents = half;
  return box;
}

// Oracle for axis-aligned boxes: per-axis interval overlap.
bool interval_overlap(const Obb& a, const Obb& b) {
  for (int i = 0; i < 3; ++i) {
    const double gap = std::abs(a.center[i] - b.center[i]);
    if (gap > a.half_extents[i] + b.half_extents[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("obb overlap basics") {
  const Obb unit = axis_aligned(Vec3::Zero(), {0.5, 0.5, 0.5});
  CHECK(obb_overlap(unit, unit));

  const Obb far_box = axis_aligned({3, 0, 0}, {0.5, 0.5, 0.5});
  CHECK_FALSE(obb_overlap(unit, far_box));

  const Obb near_box = axis_aligned({0.5, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(obb_overlap(unit, near_box));

  // Exact tangency counts as overlap.
  const Obb touching = axis_aligned({1.0, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(obb_overlap(unit, touching));
}

TEST_CASE("obb overlap matches the interval oracle on axis-aligned boxes") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const Obb a = axis_aligned(
        {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
        {rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5)});
    const Obb b = axis_aligned(
        {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
        {rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5)});
    CHECK(obb_overlap(a, b) == interval_overlap(a, b));
  }
}

TEST_CASE("obb overlap detects rotated separation") {
  // Long thin boxes crossing at 90 degrees.
  Obb a = axis_aligned(Vec3::Zero(), {2.0, 0.1, 0.1});
  Obb b = axis_aligned({0, 0, 0.15}, {2.0, 0.1, 0.1});
  b.axes = {Vec3::UnitY(), -Vec3::UnitX(), Vec3::UnitZ()};
  CHECK(obb_overlap(a, b));

  b.center = {0, 0, 0.5};
  CHECK_FALSE(obb_overlap(a, b));

  // Diagonal face-axis separation.
  Obb c = axis_aligned({1.2, 1.2, 0}, {0.5, 0.5, 0.5});
  const double s = std::sqrt(0.5);
  c.axes = {Vec3(s, s, 0), Vec3(-s, s, 0), Vec3::UnitZ()};
  const Obb unit = axis_aligned(Vec3::Zero(), {0.5, 0.5, 0.5});
  CHECK_FALSE(obb_overlap(unit, c));
}

TEST_CASE("obb overlap is symmetric") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Obb a, b;
    a.center = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    b.center = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    a.half_extents = {rng.uniform(0.1, 1), rng.uniform(0.1, 1),
                      rng.uniform(0.1, 1)};
    b.half_extents = {rng.uniform(0.1, 1), rng.uniform(0.1, 1),
                      rng.uniform(0.1, 1)};
    const Mat3 ra = rktest::random_rotation(rng);
    const Mat3 rb = rktest::random_rotation(rng);
    for (int i = 0; i < 3; ++i) {
      a.axes[i] = ra.col(i);
      b.axes[i] = rb.col(i);
    }
    CHECK(obb_overlap(a, b) == obb_overlap(b, a));
  }
}

TEST_CASE("obb_from_points wraps its input") {
  Rng rng(8);
  const PointCloud cloud = rktest::random_cloud(rng, 200, 1.0);
  const Mat3 r = rktest::random_rotation(rng);
  const std::array<Vec3, 3> axes{r.col(0), r.col(1), r.col(2)};
  const Obb box = obb_from_points(cloud.points, axes);
  CHECK(box.is_valid());
  for (const Vec3& p : cloud.points) {
    for (int i = 0; i < 3; ++i) {
      const double s = std::abs((p - box.center).dot(box.axes[i]));
      CHECK(s <= box.half_extents[i] + 1e-12);
    }
  }
}

TEST_CASE("obb overlap depth on interval case") {
  const Obb a = axis_aligned(Vec3::Zero(), {0.5, 0.5, 0.5});
  const Obb b = axis_aligned({0.8, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(obb_overlap_depth(a, b) == Catch::Approx(0.2).margin(1e-12));
  const Obb c = axis_aligned({3.0, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(obb_overlap_depth(a, c) == 0.0);
}
