#include "stitcher/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <unordered_map>

namespace stitcher {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct OpenEntry {
  double f;
  double g;
  int node;
  int via_edge;
};
struct OpenCompare {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;  // larger g wins on ties
    return a.node > b.node;
  }
};

enum class EdgeStatus : std::uint8_t { unchecked, feasible, pruned };

}  // namespace

SearchResult astar_search(const MpGraph& gmp, const CostToGo& ctg, const World& world,
                          const ConstraintSet& constraints, const SearchOptions& options) {
  SearchResult res;
  const double h_scale = gmp.cost_mode == EdgeCostMode::lqmt ? gmp.rho : 1.0;
  auto heuristic = [&](int node) -> double {
    if (!options.use_heuristic) return 0.0;
    double h = ctg.optimal[node];
    return std::isfinite(h) ? h_scale * h : h;
  };

  std::vector<double> g(gmp.nodes.size(), std::numeric_limits<double>::infinity());
  std::vector<int> parent_edge(gmp.nodes.size(), -1);
  std::vector<std::uint8_t> closed(gmp.nodes.size(), 0);
  std::vector<EdgeStatus> edge_status(gmp.edges.size(), EdgeStatus::unchecked);
  // Safe-sphere caches are shared between primitives of one waypoint pair;
  // the pair is identified by the source node's layer.
  std::unordered_map<int, SafeSphereSet> sphere_cache;

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCompare> open;
  g[gmp.start_node] = 0.0;
  open.push({heuristic(gmp.start_node), 0.0, gmp.start_node, -1});

  while (!open.empty()) {
    OpenEntry top = open.top();
    open.pop();
    if (top.g > g[top.node]) continue;  // stale entry
    if (closed[top.node] && top.g >= g[top.node]) continue;
    closed[top.node] = 1;
    parent_edge[top.node] = top.via_edge;
    res.stats.expanded_nodes++;

    if (top.node == gmp.goal_node) {
      res.success = true;
      res.cost = g[top.node];
      int node = top.node;
      while (parent_edge[node] >= 0) {
        res.path_edges.push_back(parent_edge[node]);
        node = gmp.edges[parent_edge[node]].from;
      }
      std::reverse(res.path_edges.begin(), res.path_edges.end());
      return res;
    }

    for (int e : gmp.out_edges[top.node]) {
      const MpEdge& edge = gmp.edges[e];
      if (edge_status[e] == EdgeStatus::unchecked) {
        res.stats.generated_edges++;
        edge_status[e] = EdgeStatus::feasible;
        if (options.prune) {
          double t0 = now_ms();
          SafeSphereSet& cache = sphere_cache[gmp.nodes[top.node].layer];
          bool hit = collision_check_cached(world, edge.segment, cache,
                                            segment_speed_bound(edge.segment),
                                            &res.stats.collision);
          res.stats.check_collision_ms += now_ms() - t0;
          if (hit) {
            edge_status[e] = EdgeStatus::pruned;
            res.stats.pruned_collision++;
          } else {
            t0 = now_ms();
            CheckResult cr = check_segment(edge.segment, constraints);
            res.stats.check_constraint_ms += now_ms() - t0;
            if (!cr.feasible) {
              edge_status[e] = EdgeStatus::pruned;
              res.stats.pruned_constraint++;
            }
          }
        }
      }
      if (edge_status[e] == EdgeStatus::pruned) continue;

      double ng = g[top.node] + edge.cost;
      if (ng < g[edge.to]) {
        g[edge.to] = ng;
        closed[edge.to] = 0;
        open.push({ng + heuristic(edge.to), ng, edge.to, e});
      }
    }
  }
  res.failure = SearchFailure::graph_disconnected;
  return res;
}

Trajectory extract_trajectory(const MpGraph& gmp, const SearchResult& result,
                              const ConstraintSet& constraints) {
  Trajectory traj;
  if (!result.success) return traj;
  double t = 0.0;
  double cost = 0.0;
  for (int e : result.path_edges) {
    const MpEdge& edge = gmp.edges[e];
    traj.segments.push_back(edge.segment);
    traj.start_times.push_back(t);
    traj.audit.push_back({true, true, constraints.sample_dt});
    t += edge.segment.duration;
    cost += edge.cost;
  }
  traj.total_duration = t;
  traj.total_cost = cost;
  return traj;
}

}  // namespace stitcher
