#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "roomkit/core/point_cloud.hpp"

namespace roomkit {

/// Exact nearest-neighbor index over a fixed point set (kd-tree, median
/// split on the widest dimension). Immutable after construction; queries
/// are read-only and safe to run concurrently.
///
/// Distance ties are broken toward the lowest original point index, so
/// results match an exhaustive scan exactly.
class NnIndex {
 public:
  struct Result {
    size_t index = 0;
    double squared_distance = std::numeric_limits<double>::infinity();
  };

  explicit NnIndex(const PointCloud& cloud) {
    if (cloud.empty()) throw EmptyCloud("NnIndex: empty cloud");
    entries_.resize(cloud.size());
    for (size_t i = 0; i < cloud.size(); ++i) {
      entries_[i] = {cloud.points[i], static_cast<uint32_t>(i)};
    }
    nodes_.reserve(2 * cloud.size() / kLeafSize + 2);
    root_ = build(0, static_cast<uint32_t>(entries_.size()));
  }

  size_t size() const { return entries_.size(); }

  Result nearest(const Vec3& query) const {
    Result best;
    search(root_, query, best);
    return best;
  }

 private:
  static constexpr uint32_t kLeafSize = 8;

  struct Entry {
    Vec3 p;
    uint32_t id;
  };

  struct Node {
    int axis = -1;  // -1 marks a leaf
    double split = 0.0;
    uint32_t left = 0, right = 0;  // children for internal nodes
    uint32_t begin = 0, end = 0;   // entry range for leaves
  };

  uint32_t build(uint32_t begin, uint32_t end) {
    Node node;
    const uint32_t count = end - begin;
    if (count <= kLeafSize) {
      node.begin = begin;
      node.end = end;
      nodes_.push_back(node);
      return static_cast<uint32_t>(nodes_.size() - 1);
    }

    Vec3 lo = entries_[begin].p, hi = entries_[begin].p;
    for (uint32_t i = begin + 1; i < end; ++i) {
      lo = lo.cwiseMin(entries_[i].p);
      hi = hi.cwiseMax(entries_[i].p);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    if (hi[axis] - lo[axis] <= 0.0) {
      // All points coincide; keep them in one leaf.
      node.begin = begin;
      node.end = end;
      nodes_.push_back(node);
      return static_cast<uint32_t>(nodes_.size() - 1);
    }

    const uint32_t mid = begin + count / 2;
    std::nth_element(entries_.begin() + begin, entries_.begin() + mid,
                     entries_.begin() + end,
                     [axis](const Entry& a, const Entry& b) {
                       if (a.p[axis] != b.p[axis]) return a.p[axis] < b.p[axis];
                       return a.id < b.id;
                     });
    node.axis = axis;
    node.split = entries_[mid].p[axis];

    const uint32_t self = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(node);
    const uint32_t left = build(begin, mid);
    const uint32_t right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  void search(uint32_t node_index, const Vec3& q, Result& best) const {
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
      for (uint32_t i = node.begin; i < node.end; ++i) {
        const double d2 = (entries_[i].p - q).squaredNorm();
        if (d2 < best.squared_distance ||
            (d2 == best.squared_distance && entries_[i].id < best.index)) {
          best.squared_distance = d2;
          best.index = entries_[i].id;
        }
      }
      return;
    }
    const double delta = q[node.axis] - node.split;
    const uint32_t near = delta < 0.0 ? node.left : node.right;
    const uint32_t far = delta < 0.0 ? node.right : node.left;
    search(near, q, best);
    // <= keeps equal-distance candidates reachable for the index tie-break.
    if (delta * delta <= best.squared_distance) search(far, q, best);
  }

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
  uint32_t root_ = 0;
};

}  // namespace roomkit
