#pragma once

#include "stitcher/types.hpp"
#include "stitcher/world.hpp"

#include <stdexcept>
#include <vector>

namespace stitcher {

struct NoPathExists : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse waypoint sequence pruned from a dense grid path.
struct GeometricPath {
  std::vector<Vec3> waypoints;  // w_1..w_N, N >= 2
  std::vector<Vec3> raw_path;   // dense grid path it was pruned from

  int waypoint_count() const { return static_cast<int>(waypoints.size()); }
};

/// Per-interior-waypoint geometry: normal of the separating hyperplane
/// (the bisector of the incoming and outgoing segment directions) and the
/// heading toward the next waypoint. Entry i corresponds to waypoint i+1.
struct PathFeatures {
  std::vector<Vec3> hyperplane_normals;
  std::vector<Vec3> headings;
};

/// 26-connected A* over the occupancy grid with Euclidean edge lengths and a
/// Euclidean heuristic. Diagonal moves are disallowed when any axis-projected
/// sub-move is blocked, so the segment between consecutive centers stays in
/// free space. Ties on f are broken toward larger g. Throws NoPathExists.
std::vector<Vec3> grid_astar(const World& world, const Vec3& start, const Vec3& goal);

/// Dijkstra over the same grid/neighbor rule; certification reference for
/// grid_astar cost optimality.
double grid_dijkstra_cost(const World& world, const Vec3& start, const Vec3& goal);

/// Dense straight-segment collision test against the occupancy grid, sampled
/// at most every voxel_size/4 meters.
bool segment_collision_free(const World& world, const Vec3& a, const Vec3& b);

/// Greedy farthest-visible pruning; endpoints always kept.
GeometricPath sparsify(const World& world, const std::vector<Vec3>& raw);

/// Requires N >= 3. Anti-parallel bisector degenerates to the heading.
PathFeatures path_features(const GeometricPath& path);

}  // namespace stitcher
