#include "stitcher/voxel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stitcher {

VoxelGrid::VoxelGrid(const Vec3& origin, double voxel_size, const Vec3i& dims)
    : origin_(origin), voxel_size_(voxel_size), dims_(dims) {
  if (voxel_size <= 0.0) throw std::invalid_argument("VoxelGrid: voxel_size must be > 0");
  if ((dims.array() <= 0).any()) throw std::invalid_argument("VoxelGrid: dims must be positive");
  occ_.assign(static_cast<std::size_t>(dims.x()) * dims.y() * dims.z(), 0);
}

Vec3i VoxelGrid::world_to_index(const Vec3& p) const {
  Vec3 rel = (p - origin_) / voxel_size_;
  return Vec3i(static_cast<int>(std::floor(rel.x())), static_cast<int>(std::floor(rel.y())),
               static_cast<int>(std::floor(rel.z())));
}

Vec3 VoxelGrid::index_to_center(const Vec3i& idx) const {
  return origin_ + voxel_size_ * (idx.cast<double>() + Vec3::Constant(0.5));
}

void VoxelGrid::mark_inflated_point(const Vec3& point, double radius) {
  const double reach = radius + 1e-12;
  Vec3i lo = world_to_index(point - Vec3::Constant(reach));
  Vec3i hi = world_to_index(point + Vec3::Constant(reach));
  lo = lo.cwiseMax(Vec3i::Zero());
  hi = hi.cwiseMin(dims_ - Vec3i::Ones());
  for (int z = lo.z(); z <= hi.z(); ++z) {
    for (int y = lo.y(); y <= hi.y(); ++y) {
      for (int x = lo.x(); x <= hi.x(); ++x) {
        Vec3i idx(x, y, z);
        Vec3 cmin = origin_ + voxel_size_ * idx.cast<double>();
        Vec3 cmax = cmin + Vec3::Constant(voxel_size_);
        Vec3 closest = point.cwiseMax(cmin).cwiseMin(cmax);
        if ((closest - point).squaredNorm() <= radius * radius + 1e-15) {
          occ_[flat(idx)] = 1;
        }
      }
    }
  }
}

std::size_t VoxelGrid::occupied_count() const {
  return std::accumulate(occ_.begin(), occ_.end(), std::size_t{0},
                         [](std::size_t acc, std::uint8_t v) { return acc + (v != 0); });
}

}  // namespace stitcher
