#pragma once

#include "stitcher/collision.hpp"
#include "stitcher/constraints.hpp"
#include "stitcher/mp_graph.hpp"
#include "stitcher/trajectory.hpp"
#include "stitcher/velocity_graph.hpp"
#include "stitcher/world.hpp"

#include <optional>

namespace stitcher {

struct SearchStats {
  long generated_edges = 0;   // primitives checked during search
  long expanded_nodes = 0;
  long pruned_collision = 0;
  long pruned_constraint = 0;
  CollisionCounters collision;
  double check_collision_ms = 0.0;
  double check_constraint_ms = 0.0;
};

enum class SearchFailure { none, graph_disconnected };

struct SearchResult {
  bool success = false;
  SearchFailure failure = SearchFailure::none;
  std::vector<int> path_edges;  // edge ids start -> goal
  double cost = 0.0;
  SearchStats stats;
};

struct SearchOptions {
  /// h == 0 turns A* into Dijkstra on the identical pruned graph.
  bool use_heuristic = true;
  /// Disables collision and constraint pruning (unconstrained studies).
  bool prune = true;
};

/// A* over the pre-processed motion-primitive graph guided by the velocity
/// graph cost-to-go (scaled by rho for the LQMT edge cost). Candidate edges
/// are pruned by the collision checker (shared safe-sphere cache per waypoint
/// pair) and the sampling constraint checker. Ties on f prefer larger g.
/// One call owns its whole mutable context; concurrent calls over the same
/// graph/world are safe.
SearchResult astar_search(const MpGraph& gmp, const CostToGo& ctg, const World& world,
                          const ConstraintSet& constraints, const SearchOptions& options = {});

/// Assemble the stitched trajectory from a successful search.
Trajectory extract_trajectory(const MpGraph& gmp, const SearchResult& result,
                              const ConstraintSet& constraints);

}  // namespace stitcher
