#include <catch2/catch_amalgamated.hpp>

#include "roomkit/core/pca.hpp"
#include "test_util.hpp"

using namespace roomkit;
using rktest::Rng;

TEST_CASE("pca of planar unit square") {
  PointCloud cloud;
  cloud.points = {{0.5, 0.5, 0.0}, {0.5, -0.5, 0.0}, {-0.5, 0.5, 0.0},
                  {-0.5, -0.5, 0.0}};
  const PrincipalAxes pca = compute_pca(cloud);

  CHECK(std::abs(pca.axes[2].dot(Vec3::UnitZ())) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(pca.eigenvalues[0] == Catch::Approx(pca.eigenvalues[1]).margin(1e-12));
  CHECK(pca.eigenvalues[2] == Catch::Approx(0.0).margin(1e-12));
  CHECK(pca.centroid.norm() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("pca of a degenerate line keeps the dominant axis") {
  PointCloud cloud;
  for (int i = 0; i < 50; ++i) {
    cloud.points.push_back({2.0 * i / 49.0, 0.0, 0.0});
  }
  const PrincipalAxes pca = compute_pca(cloud);
  CHECK(std::abs(pca.axes[0].dot(Vec3::UnitX())) ==
        Catch::Approx(1.0).margin(1e-9));
  CHECK(pca.extents[0] == Catch::Approx(2.0).margin(1e-9));
  CHECK(pca.eigenvalues[1] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("pca extents of a uniform box match its dimensions") {
  // Oracle: analytic box dimensions, uniform sampler.
  Rng rng(42);
  PointCloud cloud;
  for (int i = 0; i < 1000; ++i) {
    cloud.points.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0),
                            rng.uniform(-0.5, 0.5)});
  }
  const PrincipalAxes pca = compute_pca(cloud);
  CHECK(pca.extents[0] == Catch::Approx(4.0).epsilon(0.05));
  CHECK(pca.extents[1] == Catch::Approx(2.0).epsilon(0.05));
  CHECK(pca.extents[2] == Catch::Approx(1.0).epsilon(0.05));
}

TEST_CASE("pca axes are right-handed") {
  Rng rng(7);
  const PointCloud cloud = rktest::random_cloud(rng, 60);
  const PrincipalAxes pca = compute_pca(cloud);
  CHECK((pca.axes[0].cross(pca.axes[1]) - pca.axes[2]).norm() ==
        Catch::Approx(0.0).margin(1e-12));
  Mat3 m;
  m << pca.axes[0], pca.axes[1], pca.axes[2];
  CHECK(m.determinant() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("pca is equivariant under rigid transforms") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    PointCloud cloud;
    // Anisotropic shape so eigenvalues are well separated.
    for (int i = 0; i < 200; ++i) {
      cloud.points.push_back({rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0),
                              rng.uniform(-0.2, 0.2)});
    }
    const RigidTransform t = rktest::random_rigid(rng);
    const PrincipalAxes before = compute_pca(cloud);
    const PrincipalAxes after = compute_pca(cloud.transformed(t));
    for (int i = 0; i < 3; ++i) {
      const Vec3 expected = t.rotation * before.axes[i];
      CHECK(std::abs(expected.dot(after.axes[i])) ==
            Catch::Approx(1.0).margin(1e-6));
      CHECK(after.eigenvalues[i] ==
            Catch::Approx(before.eigenvalues[i]).margin(1e-9));
      CHECK(after.extents[i] == Catch::Approx(before.extents[i]).margin(1e-9));
    }
  }
}

TEST_CASE("pca rejects degenerate input") {
  PointCloud two;
  two.points = {{0, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(compute_pca(two), DegenerateCloud);

  PointCloud coincident;
  coincident.points = {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}};
  CHECK_THROWS_AS(compute_pca(coincident), DegenerateCloud);
}

TEST_CASE("pca 2d recovers in-plane axes") {
  Rng rng(3);
  std::vector<Vec2> pts;
  for (int i = 0; i < 500; ++i) {
    pts.push_back(Vec2(rng.uniform(-2.0, 2.0), rng.uniform(-0.5, 0.5)));
  }
  const PrincipalAxes2d pca = compute_pca_2d(pts);
  CHECK(std::abs(pca.axes[0].dot(Vec2(1, 0))) ==
        Catch::Approx(1.0).margin(1e-2));
  CHECK(pca.extents[0] == Catch::Approx(4.0).epsilon(0.05));
  CHECK(pca.extents[1] == Catch::Approx(1.0).epsilon(0.05));
}
