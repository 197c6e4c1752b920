#include "stitcher/kd_tree.hpp"

#include <algorithm>
#include <cmath>

namespace stitcher {

KdTree::KdTree(std::vector<Vec3> points) {
  nodes_.reserve(points.size());
  if (!points.empty()) {
    root_ = build(points, 0, static_cast<int>(points.size()), 0);
  }
}

int KdTree::build(std::vector<Vec3>& pts, int lo, int hi, int depth) {
  if (lo >= hi) return -1;
  int axis = depth % 3;
  int mid = lo + (hi - lo) / 2;
  std::nth_element(pts.begin() + lo, pts.begin() + mid, pts.begin() + hi,
                   [axis](const Vec3& a, const Vec3& b) { return a[axis] < b[axis]; });
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back({pts[mid], axis, -1, -1});
  int left = build(pts, lo, mid, depth + 1);
  int right = build(pts, mid + 1, hi, depth + 1);
  nodes_[idx].left = left;
  nodes_[idx].right = right;
  return idx;
}

void KdTree::nearest(int node, const Vec3& query, double& best_sq) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  best_sq = std::min(best_sq, (n.point - query).squaredNorm());
  double delta = query[n.axis] - n.point[n.axis];
  int near = delta < 0.0 ? n.left : n.right;
  int far = delta < 0.0 ? n.right : n.left;
  nearest(near, query, best_sq);
  if (delta * delta < best_sq) nearest(far, query, best_sq);
}

double KdTree::nearest_squared_distance(const Vec3& query) const {
  if (root_ < 0) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  nearest(root_, query, best);
  return best;
}

double KdTree::nearest_distance(const Vec3& query) const {
  return std::sqrt(nearest_squared_distance(query));
}

}  // namespace stitcher
