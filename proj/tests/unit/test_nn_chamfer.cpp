#include <catch2/catch_amalgamated.hpp>

#include "roomkit/core/chamfer.hpp"
#include "roomkit/core/nn_index.hpp"
#include "test_util.hpp"

using namespace roomkit;
using rktest::Rng;

namespace {

// Brute-force oracle: exhaustive linear scan with the same tie rule.
NnIndex::Result brute_nearest(const PointCloud& cloud, const Vec3& q) {
  NnIndex::Result best;
  for (size_t i = 0; i < cloud.size(); ++i) {
    const double d2 = (cloud.points[i] - q).squaredNorm();
    if (d2 < best.squared_distance) {
      best = {i, d2};
    }
  }
  return best;
}

// Brute-force oracle: O(n^2) double loop.
double brute_chamfer(const PointCloud& a, const PointCloud& b) {
  auto directional = [](const PointCloud& from, const PointCloud& to) {
    double acc = 0.0;
    for (const Vec3& p : from.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& q : to.points) {
        best = std::min(best, (p - q).squaredNorm());
      }
      acc += best;
    }
    return acc / static_cast<double>(from.size());
  };
  return 0.5 * (directional(a, b) + directional(b, a));
}

}  // namespace

TEST_CASE("nearest neighbor basics") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {1, 0, 0}};
  NnIndex index(cloud);

  auto r = index.nearest({0.4, 0, 0});
  CHECK(r.index == 0);
  CHECK(r.squared_distance == Catch::Approx(0.16).margin(1e-15));

  r = index.nearest({1, 0, 0});
  CHECK(r.index == 1);
  CHECK(r.squared_distance == 0.0);
}

TEST_CASE("nearest neighbor breaks ties toward the lowest index") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {2, 0, 0}, {1, 1, 0}};
  NnIndex index(cloud);
  const auto r = index.nearest({1, 0, 0});
  CHECK(r.index == 0);
  CHECK(r.squared_distance == Catch::Approx(1.0));
}

TEST_CASE("nearest neighbor matches exhaustive scan") {
  Rng rng(123);
  const PointCloud cloud = rktest::random_cloud(rng, 1000, 2.0);
  NnIndex index(cloud);
  for (int k = 0; k < 100; ++k) {
    const Vec3 q(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5),
                 rng.uniform(-2.5, 2.5));
    const auto got = index.nearest(q);
    const auto want = brute_nearest(cloud, q);
    CHECK(got.index == want.index);
    CHECK(got.squared_distance == want.squared_distance);
  }
  // Queries sitting exactly on stored points.
  for (int k = 0; k < 50; ++k) {
    const size_t i = rng.index(cloud.size());
    const auto got = index.nearest(cloud.points[i]);
    CHECK(got.squared_distance == 0.0);
  }
}

TEST_CASE("nearest neighbor handles duplicated points") {
  PointCloud cloud;
  for (int i = 0; i < 40; ++i) cloud.points.push_back({1, 1, 1});
  cloud.points.push_back({0, 0, 0});
  NnIndex index(cloud);
  const auto r = index.nearest({1.0, 1.0, 0.9});
  CHECK(r.index == 0);  // first of the duplicates
}

TEST_CASE("empty cloud is rejected") {
  PointCloud empty;
  CHECK_THROWS_AS(NnIndex(empty), EmptyCloud);
  PointCloud one;
  one.points = {{0, 0, 0}};
  CHECK_THROWS_AS(chamfer_distance(empty, one), EmptyCloud);
  CHECK_THROWS_AS(chamfer_distance(one, empty), EmptyCloud);
}

TEST_CASE("chamfer distance basics") {
  PointCloud a, b;
  a.points = {{0, 0, 0}};
  b.points = {{1, 0, 0}};
  CHECK(chamfer_distance(a, b) == Catch::Approx(1.0));

  Rng rng(5);
  const PointCloud c = rktest::random_cloud(rng, 64);
  CHECK(chamfer_distance(c, c) == 0.0);
}

TEST_CASE("chamfer variants") {
  PointCloud a, b;
  a.points = {{0, 0, 0}};
  b.points = {{1, 0, 0}, {3, 0, 0}};

  ChamferOptions squared_dir{true, false};
  CHECK(chamfer_distance(a, b, squared_dir) == Catch::Approx(1.0));
  CHECK(chamfer_distance(b, a, squared_dir) == Catch::Approx(5.0));

  ChamferOptions squared_sym{true, true};
  CHECK(chamfer_distance(a, b, squared_sym) == Catch::Approx(3.0));

  ChamferOptions plain_sym{false, true};
  CHECK(chamfer_distance(a, b, plain_sym) == Catch::Approx(0.5 * (1.0 + 2.0)));
}

TEST_CASE("chamfer matches the O(n^2) oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t na = 20 + rng.index(181);
    const size_t nb = 20 + rng.index(181);
    const PointCloud a = rktest::random_cloud(rng, na, 1.5);
    const PointCloud b = rktest::random_cloud(rng, nb, 1.5);
    const double got = chamfer_distance(a, b);
    const double want = brute_chamfer(a, b);
    CHECK(std::abs(got - want) <= 1e-12);
  }
}

TEST_CASE("chamfer is symmetric and rigid-invariant") {
  Rng rng(99);
  const PointCloud a = rktest::random_cloud(rng, 150);
  const PointCloud b = rktest::random_cloud(rng, 120);
  const double ab = chamfer_distance(a, b);
  CHECK(chamfer_distance(b, a) == Catch::Approx(ab).margin(1e-15));

  for (int trial = 0; trial < 5; ++trial) {
    const RigidTransform t = rktest::random_rigid(rng);
    const double moved = chamfer_distance(a.transformed(t), b.transformed(t));
    CHECK(std::abs(moved - ab) <= 1e-9);
  }
}
