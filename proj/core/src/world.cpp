#include "stitcher/world.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stitcher {

World::World(PointCloud cloud, double voxel_size, double vehicle_radius, Aabb bounds)
    : cloud_(std::move(cloud)), vehicle_radius_(vehicle_radius), bounds_(bounds) {
  if (voxel_size <= 0.0) throw std::invalid_argument("build_world: voxel_size must be > 0");
  if (vehicle_radius < 0.0)
    throw std::invalid_argument("build_world: vehicle_radius must be >= 0");
  if ((bounds.extent().array() <= 0.0).any())
    throw std::invalid_argument("build_world: bounds are degenerate");

  Vec3 extent = bounds.extent();
  Vec3i dims(static_cast<int>(std::ceil(extent.x() / voxel_size)),
             static_cast<int>(std::ceil(extent.y() / voxel_size)),
             static_cast<int>(std::ceil(extent.z() / voxel_size)));
  grid_ = VoxelGrid(bounds.min, voxel_size, dims);

  for (std::size_t i = 0; i < cloud_.points.size(); ++i) {
    const Vec3& p = cloud_.points[i];
    if (!p.allFinite()) {
      throw std::invalid_argument("build_world: point " + std::to_string(i) + " is not finite");
    }
    if (!bounds.contains(p)) {
      std::ostringstream oss;
      oss << "build_world: point " << i << " (" << p.transpose() << ") outside bounds";
      throw std::invalid_argument(oss.str());
    }
    grid_.mark_inflated_point(p, vehicle_radius);
  }
  nn_index_ = KdTree(cloud_.points);
}

double World::nearest_obstacle_distance(const Vec3& p) const {
  if (!p.allFinite()) throw std::invalid_argument("nearest_obstacle_distance: p not finite");
  double d = nn_index_.nearest_distance(p);
  if (!std::isfinite(d)) return d;
  return std::max(0.0, d - vehicle_radius_);
}

World build_world(PointCloud cloud, double voxel_size, double vehicle_radius,
                  const Aabb& bounds) {
  return World(std::move(cloud), voxel_size, vehicle_radius, bounds);
}

}  // namespace stitcher
