#pragma once

#include "stitcher/types.hpp"

#include <cstdint>
#include <vector>

namespace stitcher {

/// Dense occupancy voxel grid. A voxel is occupied iff some cloud point,
/// inflated by the vehicle radius, intersects its axis-aligned cell.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(const Vec3& origin, double voxel_size, const Vec3i& dims);

  const Vec3& origin() const { return origin_; }
  double voxel_size() const { return voxel_size_; }
  const Vec3i& dims() const { return dims_; }
  std::size_t cell_count() const { return occ_.size(); }

  bool in_bounds(const Vec3i& idx) const {
    return (idx.array() >= 0).all() && (idx.array() < dims_.array()).all();
  }
  std::size_t flat(const Vec3i& idx) const {
    return static_cast<std::size_t>(idx.x()) +
           static_cast<std::size_t>(dims_.x()) *
               (static_cast<std::size_t>(idx.y()) +
                static_cast<std::size_t>(dims_.y()) * static_cast<std::size_t>(idx.z()));
  }

  /// Out-of-bounds cells count as occupied.
  bool occupied(const Vec3i& idx) const {
    return !in_bounds(idx) || occ_[flat(idx)] != 0;
  }
  bool occupied_point(const Vec3& p) const { return occupied(world_to_index(p)); }
  void set_occupied(const Vec3i& idx) {
    if (in_bounds(idx)) occ_[flat(idx)] = 1;
  }

  Vec3i world_to_index(const Vec3& p) const;
  Vec3 index_to_center(const Vec3i& idx) const;

  /// Mark every voxel whose cell lies within `radius` of `point`
  /// (exact point-to-box distance test).
  void mark_inflated_point(const Vec3& point, double radius);

  std::size_t occupied_count() const;

 private:
  Vec3 origin_ = Vec3::Zero();
  double voxel_size_ = 0.2;
  Vec3i dims_ = Vec3i::Zero();
  std::vector<std::uint8_t> occ_;
};

}  // namespace stitcher
