#pragma once

#include "stitcher/types.hpp"

#include <limits>
#include <vector>

namespace stitcher {

/// Static median-split k-d tree over 3D points with exact nearest-neighbor
/// distance queries (matches a linear scan to floating-point accuracy).
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::vector<Vec3> points);

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

  /// Squared distance to the nearest point; +infinity when empty.
  double nearest_squared_distance(const Vec3& query) const;
  double nearest_distance(const Vec3& query) const;

 private:
  struct Node {
    Vec3 point;
    int axis = 0;
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes_;
  int root_ = -1;

  int build(std::vector<Vec3>& pts, int lo, int hi, int depth);
  void nearest(int node, const Vec3& query, double& best_sq) const;
};

}  // namespace stitcher
