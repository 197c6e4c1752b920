#pragma once

#include "stitcher/kd_tree.hpp"
#include "stitcher/types.hpp"
#include "stitcher/voxel_grid.hpp"

#include <vector>

namespace stitcher {

struct PointCloud {
  std::vector<Vec3> points;
};

/// Immutable environment: point cloud, inflated occupancy grid, and an exact
/// nearest-neighbor index. Obstacle inflation by the vehicle radius happens
/// here, so downstream planning treats the vehicle as a point. Safe to share
/// across concurrent planner queries after construction.
class World {
 public:
  World(PointCloud cloud, double voxel_size, double vehicle_radius, Aabb bounds);

  /// Euclidean distance to the nearest cloud point minus the vehicle radius,
  /// floored at zero; +infinity for an empty cloud.
  double nearest_obstacle_distance(const Vec3& p) const;

  const PointCloud& cloud() const { return cloud_; }
  const VoxelGrid& grid() const { return grid_; }
  const KdTree& nn_index() const { return nn_index_; }
  const Aabb& bounds() const { return bounds_; }
  double vehicle_radius() const { return vehicle_radius_; }
  double voxel_size() const { return grid_.voxel_size(); }

 private:
  PointCloud cloud_;
  VoxelGrid grid_;
  KdTree nn_index_;
  double vehicle_radius_ = 0.0;
  Aabb bounds_;
};

/// Builds the grid and nearest-neighbor index. Points outside the bounds are
/// rejected with a diagnostic.
World build_world(PointCloud cloud, double voxel_size, double vehicle_radius,
                  const Aabb& bounds);

}  // namespace stitcher
