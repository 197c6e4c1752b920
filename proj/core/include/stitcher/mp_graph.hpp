#pragma once

#include "stitcher/lqmt.hpp"
#include "stitcher/route.hpp"
#include "stitcher/velocity_graph.hpp"

#include <string>
#include <vector>

namespace stitcher {

enum class EdgeCostMode { lqmt, time };
EdgeCostMode edge_cost_mode_from_string(const std::string& s);
std::string to_string(EdgeCostMode m);

/// Node of the motion-primitive graph. Identity is (waypoint, velocity) only,
/// mirroring the velocity graph; the arrival derivatives (acceleration and
/// above) are fixed by the greedy pre-processing pass.
struct MpNode {
  int layer = 0;
  int waypoint = 0;
  Vec3 velocity = Vec3::Zero();
  std::vector<Vec3> arrival_derivs;  // orders 2..p-1
};

struct MpEdge {
  int from = 0;
  int to = 0;
  PolySegment segment;
  double cost = 0.0;      // LQMT J or duration per cost mode
  double duration = 0.0;  // segment duration (time cost)
};

struct MpGraph {
  std::vector<MpNode> nodes;  // indices mirror the source VelocityGraph
  std::vector<MpEdge> edges;
  std::vector<std::vector<int>> out_edges;
  std::vector<std::vector<int>> in_edges;
  int start_node = 0;
  int goal_node = 0;
  int n_waypoints = 0;
  int samples_per_layer = 0;
  EdgeCostMode cost_mode = EdgeCostMode::lqmt;
  double rho = 1000.0;
  int order_p = 3;
};

/// Forward sweep over layers. Each node's incoming primitives start from the
/// source node's stored arrival state; the node adopts the terminal
/// derivatives realized by its minimum-cost incoming primitive, and the
/// remaining incoming primitives are re-solved with the terminal state pinned
/// to that arrival state so any path through the node stitches with
/// position/velocity/acceleration continuity. Goal-layer primitives keep
/// their terminal derivatives of order >= 2 free. Node and edge counts equal
/// the velocity-graph counts.
MpGraph preprocess_mp_graph(const VelocityGraph& vg, const GeometricPath& path,
                            const std::vector<Vec3>& start_higher_derivs, double rho,
                            int p, EdgeCostMode mode);

}  // namespace stitcher
