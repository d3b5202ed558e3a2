#include <catch2/catch_amalgamated.hpp>

#include "roomkit/fusion/tsdf.hpp"
#include "test_util.hpp"

using namespace roomkit;
using rktest::Rng;
using rktest::TempDir;

namespace {

// Frame looking down +z at a wall of constant depth, identity pose.
DepthFrame wall_frame(double depth, int size = 64) {
  DepthFrame f;
  f.width = size;
  f.height = size;
  f.intrinsics = {double(size), double(size), size / 2.0 - 0.5,
                  size / 2.0 - 0.5};
  f.depth.assign(size_t(size) * size, depth);
  return f;
}

// Volume whose voxel centers hit z = plane_z exactly (layer k = 6).
TsdfVolume plane_volume(double plane_z, double voxel = 0.05) {
  const double origin_z = plane_z - 6.5 * voxel;
  return TsdfVolume({-0.3, -0.3, origin_z}, voxel, {12, 12, 13},
                    5 * voxel);
}

}  // namespace

TEST_CASE("integration hits zero on the observed surface") {
  TsdfVolume vol = plane_volume(2.0);
  vol.integrate(wall_frame(2.0));

  // Voxel centered exactly on the plane: tsdf 0, weight 1.
  CHECK(vol.tsdf_at(6, 6, 6) == Catch::Approx(0.0).margin(1e-12));
  CHECK(vol.weight_at(6, 6, 6) == 1.0f);

  // One truncation band in front of the surface clamps to +1.
  CHECK(vol.tsdf_at(6, 6, 1) == Catch::Approx(1.0).margin(1e-12));

  // Behind the surface by more than the truncation: untouched.
  CHECK(vol.weight_at(6, 6, 12) == 0.0f);

  // Just behind the surface: negative but updated.
  CHECK(vol.tsdf_at(6, 6, 7) < 0.0);
  CHECK(vol.weight_at(6, 6, 7) == 1.0f);
}

TEST_CASE("re-integrating the same frame doubles weights, not values") {
  TsdfVolume once = plane_volume(2.0);
  once.integrate(wall_frame(2.0));
  TsdfVolume twice = plane_volume(2.0);
  twice.integrate(wall_frame(2.0));
  twice.integrate(wall_frame(2.0));

  const auto dims = once.dims();
  for (int k = 0; k < dims[2]; ++k) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int i = 0; i < dims[0]; ++i) {
        CHECK(twice.tsdf_at(i, j, k) ==
              Catch::Approx(once.tsdf_at(i, j, k)).margin(1e-15));
        CHECK(twice.weight_at(i, j, k) == 2.0f * once.weight_at(i, j, k));
      }
    }
  }
}

TEST_CASE("integration order does not matter") {
  const DepthFrame frames[3] = {wall_frame(2.0), wall_frame(2.02),
                                wall_frame(1.97)};
  TsdfVolume fwd = plane_volume(2.0);
  for (const auto& f : frames) fwd.integrate(f);
  TsdfVolume rev = plane_volume(2.0);
  for (int i = 2; i >= 0; --i) rev.integrate(frames[i]);

  const auto dims = fwd.dims();
  double max_diff = 0.0;
  for (int k = 0; k < dims[2]; ++k) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int i = 0; i < dims[0]; ++i) {
        max_diff = std::max(
            max_diff, std::abs(fwd.tsdf_at(i, j, k) - rev.tsdf_at(i, j, k)));
        CHECK(fwd.weight_at(i, j, k) == rev.weight_at(i, j, k));
      }
    }
  }
  CHECK(max_diff <= 1e-9);
}

TEST_CASE("weights never decrease") {
  TsdfVolume vol = plane_volume(2.0);
  std::vector<float> before(12 * 12 * 13, 0.0f);
  for (int round = 0; round < 3; ++round) {
    vol.integrate(wall_frame(2.0 + 0.01 * round));
    size_t at = 0;
    const auto dims = vol.dims();
    for (int k = 0; k < dims[2]; ++k) {
      for (int j = 0; j < dims[1]; ++j) {
        for (int i = 0; i < dims[0]; ++i, ++at) {
          CHECK(vol.weight_at(i, j, k) >= before[at]);
          before[at] = vol.weight_at(i, j, k);
        }
      }
    }
  }
}

TEST_CASE("extracted wall points sit on the true plane") {
  TsdfVolume vol = plane_volume(2.0);
  vol.integrate(wall_frame(2.0));
  const PointCloud pts = vol.extract_points();
  REQUIRE(!pts.empty());
  double rms = 0.0;
  for (const Vec3& p : pts.points) {
    rms += (p.z() - 2.0) * (p.z() - 2.0);
  }
  rms = std::sqrt(rms / pts.size());
  CHECK(rms < vol.voxel_size());
}

TEST_CASE("all-positive volumes have nothing to extract") {
  TsdfVolume vol = plane_volume(2.0);
  vol.integrate(wall_frame(10.0));  // surface far behind the volume
  CHECK_THROWS_AS(vol.extract_points(), EmptyVolume);
}

TEST_CASE("a symmetric crossing interpolates to the edge midpoint") {
  TsdfVolume vol({0, 0, 0}, 0.1, {2, 1, 1}, 0.1);
  vol.set_voxel(0, 0, 0, 0.5, 1.0f, {1, 0, 0});
  vol.set_voxel(1, 0, 0, -0.5, 1.0f, {0, 1, 0});
  const PointCloud pts = vol.extract_points();
  REQUIRE(pts.size() == 1);
  const Vec3 mid = 0.5 * (vol.voxel_center(0, 0, 0) + vol.voxel_center(1, 0, 0));
  CHECK((pts.points[0] - mid).norm() <= 1e-12);
  REQUIRE(pts.has_colors());
  CHECK(pts.colors[0].x() == Catch::Approx(0.5));
  CHECK(pts.colors[0].y() == Catch::Approx(0.5));
}

TEST_CASE("zero-weight neighbors produce no crossing") {
  TsdfVolume vol({0, 0, 0}, 0.1, {2, 1, 1}, 0.1);
  vol.set_voxel(0, 0, 0, 0.5, 1.0f);
  vol.set_voxel(1, 0, 0, -0.5, 0.0f);
  CHECK_THROWS_AS(vol.extract_points(), EmptyVolume);
}

TEST_CASE("colors are carried through fusion") {
  DepthFrame f = wall_frame(2.0);
  f.color.assign(size_t(f.width) * f.height, Vec3(0.2, 0.4, 0.8));
  TsdfVolume vol = plane_volume(2.0);
  vol.integrate(f);
  const PointCloud pts = vol.extract_points();
  REQUIRE(pts.has_colors());
  for (const Vec3& c : pts.colors) {
    CHECK(c.x() == Catch::Approx(0.2).margin(1e-6));
    CHECK(c.z() == Catch::Approx(0.8).margin(1e-6));
  }
}

TEST_CASE("volume checkpoint round trips") {
  TempDir dir("tsdf");
  TsdfVolume vol = plane_volume(2.0, 0.04);
  vol.integrate(wall_frame(2.0));
  vol.save(dir.file("v.tsdf"));
  const TsdfVolume back = TsdfVolume::load(dir.file("v.tsdf"));
  REQUIRE(back.dims() == vol.dims());
  CHECK(back.voxel_size() == vol.voxel_size());
  CHECK(back.truncation() == vol.truncation());
  CHECK((back.origin() - vol.origin()).norm() == 0.0);
  const auto dims = vol.dims();
  for (int k = 0; k < dims[2]; ++k) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int i = 0; i < dims[0]; ++i) {
        CHECK(back.tsdf_at(i, j, k) == vol.tsdf_at(i, j, k));
        CHECK(back.weight_at(i, j, k) == vol.weight_at(i, j, k));
      }
    }
  }
}

TEST_CASE("volume parameter validation") {
  CHECK_THROWS_AS(TsdfVolume({0, 0, 0}, 0.0, {4, 4, 4}, 0.1),
                  InvalidArgument);
  CHECK_THROWS_AS(TsdfVolume({0, 0, 0}, 0.05, {4, 4, 4}, 0.01),
                  InvalidArgument);
  CHECK_THROWS_AS(TsdfVolume({0, 0, 0}, 0.05, {0, 4, 4}, 0.25),
                  InvalidArgument);
}

TEST_CASE("frames_bounds wraps the observed surface") {
  const DepthFrame f = wall_frame(2.0, 32);
  const auto [lo, hi] = frames_bounds({f}, 1);
  CHECK(lo.z() == Catch::Approx(2.0));
  CHECK(hi.z() == Catch::Approx(2.0));
  // Frustum half width at depth 2 with fx = 32, W = 32: about +-1.
  CHECK(hi.x() > 0.8);
  CHECK(lo.x() < -0.8);
}
