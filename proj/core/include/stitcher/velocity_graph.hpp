#pragma once

#include "stitcher/min_time.hpp"
#include "stitcher/route.hpp"
#include "stitcher/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stitcher {

/// Sampled velocity magnitudes (shared) and per-interior-waypoint unit
/// directions built from the separating-hyperplane normal and the heading.
struct VelocitySampleSet {
  std::vector<double> magnitudes;
  std::vector<std::vector<Vec3>> directions;  // one set per interior waypoint
};

/// Magnitudes: n_speeds evenly spaced speeds over [0, v_max] including both
/// endpoints. Directions: the hyperplane normal plus rotations of
/// +-cone_half_angle/2 within the (normal, heading) plane.
VelocitySampleSet build_velocity_set(const PathFeatures& features, double v_max,
                                     int n_speeds, double cone_half_angle_deg);

struct VelGraphNode {
  int layer = 0;     // 0 = start, 1..N-2 = interior, N-1 = goal
  int waypoint = 0;  // index into GeometricPath::waypoints
  Vec3 velocity = Vec3::Zero();
};

struct VelGraphEdge {
  int from = 0;
  int to = 0;
  double min_time = 0.0;  // T_d from the synchronized double integrator
};

/// Layered graph over (waypoint, sampled velocity) nodes with minimum-time
/// edges. Collision and state constraints are deliberately not enforced here.
struct VelocityGraph {
  std::vector<VelGraphNode> nodes;  // node 0 = start, last node = goal
  std::vector<VelGraphEdge> edges;
  std::vector<std::vector<int>> out_edges;  // per node, ascending edge ids
  int start_node = 0;
  int goal_node = 0;
  int n_waypoints = 0;        // N
  int samples_per_layer = 0;  // M (after speed-zero deduplication)
};

/// Cross product of magnitudes and per-waypoint directions with duplicates
/// removed (speed zero contributes a single node regardless of direction).
std::vector<std::vector<Vec3>> sample_velocity_lists(const VelocitySampleSet& samples,
                                                     int n_interior);

/// Interior layers hold M = |V_m|*|V_d| minus duplicates nodes (speed zero
/// contributes a single node). Node and edge counts are exactly
/// (N-2)M + 2 and (N-3)M^2 + 2M for N > 2; the N = 2 graph has one edge.
VelocityGraph build_velocity_graph(const GeometricPath& path,
                                   const VelocitySampleSet& samples,
                                   const Vec3& start_velocity, double u_max);

/// Variant with explicit per-interior-waypoint velocity lists; the sampled
/// lists must all have the same size.
VelocityGraph build_velocity_graph_explicit(const GeometricPath& path,
                                            const std::vector<std::vector<Vec3>>& velocities,
                                            const Vec3& start_velocity, double u_max);

/// Backward dynamic-programming sweep (Bellman). optimal[n] is the
/// minimum-time cost-to-go; ranked[n] lists (edge id, cost-to-go through that
/// edge) sorted ascending.
struct CostToGo {
  std::vector<double> optimal;
  std::vector<std::vector<std::pair<int, double>>> ranked;
};

CostToGo dp_cost_to_go(const VelocityGraph& graph);

/// Debug dumps: nodes as `layer,wp,vx,vy,vz,V*` and edges as `from,to,T_d`.
void dump_velocity_graph_csv(const VelocityGraph& graph, const CostToGo& ctg,
                             const std::string& nodes_path, const std::string& edges_path);

}  // namespace stitcher
