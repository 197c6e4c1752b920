#include "stitcher/mp_graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stitcher {

EdgeCostMode edge_cost_mode_from_string(const std::string& s) {
  if (s == "lqmt") return EdgeCostMode::lqmt;
  if (s == "time") return EdgeCostMode::time;
  throw std::invalid_argument("unknown edge cost mode: " + s);
}

std::string to_string(EdgeCostMode m) {
  return m == EdgeCostMode::lqmt ? "lqmt" : "time";
}

namespace {

double edge_cost(const LqmtResult& r, EdgeCostMode mode) {
  return mode == EdgeCostMode::lqmt ? r.cost.J : r.cost.T;
}

std::vector<Vec3> full_state(const Vec3& position, const Vec3& velocity,
                             const std::vector<Vec3>& higher, int p) {
  std::vector<Vec3> state;
  state.reserve(p);
  state.push_back(position);
  state.push_back(velocity);
  for (int q = 2; q < p; ++q) {
    int idx = q - 2;
    state.push_back(idx < static_cast<int>(higher.size()) ? higher[idx] : Vec3::Zero());
  }
  return state;
}

}  // namespace

MpGraph preprocess_mp_graph(const VelocityGraph& vg, const GeometricPath& path,
                            const std::vector<Vec3>& start_higher_derivs, double rho,
                            int p, EdgeCostMode mode) {
  if (p < 2) throw std::invalid_argument("preprocess_mp_graph: p must be >= 2");
  MpGraph g;
  g.n_waypoints = vg.n_waypoints;
  g.samples_per_layer = vg.samples_per_layer;
  g.start_node = vg.start_node;
  g.goal_node = vg.goal_node;
  g.cost_mode = mode;
  g.rho = rho;
  g.order_p = p;

  g.nodes.resize(vg.nodes.size());
  for (std::size_t i = 0; i < vg.nodes.size(); ++i) {
    g.nodes[i].layer = vg.nodes[i].layer;
    g.nodes[i].waypoint = vg.nodes[i].waypoint;
    g.nodes[i].velocity = vg.nodes[i].velocity;
  }
  g.nodes[g.start_node].arrival_derivs.assign(std::max(0, p - 2), Vec3::Zero());
  for (int q = 2; q < p; ++q) {
    int idx = q - 2;
    if (idx < static_cast<int>(start_higher_derivs.size())) {
      g.nodes[g.start_node].arrival_derivs[idx] = start_higher_derivs[idx];
    }
  }

  g.out_edges.assign(vg.nodes.size(), {});
  g.in_edges.assign(vg.nodes.size(), {});
  g.edges.reserve(vg.edges.size());

  // The velocity graph stores edges grouped by source layer; process layer
  // pairs in order so source arrival states are already fixed.
  struct Incoming {
    int vg_edge;
    LqmtResult free_solve;
  };
  const int n_nodes = static_cast<int>(vg.nodes.size());
  std::vector<std::vector<Incoming>> incoming(n_nodes);
  for (int layer = 0; layer + 1 < g.n_waypoints; ++layer) {
    for (std::size_t i = 0; i < vg.nodes.size(); ++i) {
      if (vg.nodes[i].layer != layer) continue;
      const MpNode& src = g.nodes[i];
      std::vector<Vec3> init = full_state(path.waypoints[src.waypoint], src.velocity,
                                          src.arrival_derivs, p);
      for (int e : vg.out_edges[i]) {
        int to = vg.edges[e].to;
        LqmtResult r = lqmt_solve(init, path.waypoints[g.nodes[to].waypoint],
                                  g.nodes[to].velocity, rho, p);
        incoming[to].push_back({e, std::move(r)});
      }
    }
    // Fix each destination node's arrival state from its least-cost incoming
    // primitive, then materialize edges (non-best edges pinned to it).
    for (int to = 0; to < n_nodes; ++to) {
      if (vg.nodes[to].layer != layer + 1 || incoming[to].empty()) continue;
      auto& inc = incoming[to];
      int best = 0;
      for (int k = 1; k < static_cast<int>(inc.size()); ++k) {
        if (edge_cost(inc[k].free_solve, mode) < edge_cost(inc[best].free_solve, mode)) {
          best = k;
        }
      }
      const bool is_goal = (to == g.goal_node);
      std::vector<Vec3> arrival;  // orders 0..p-1 of the adopted arrival state
      if (!is_goal) {
        arrival = inc[best].free_solve.segment.final_derivs;
        g.nodes[to].arrival_derivs.assign(arrival.begin() + 2, arrival.end());
      }
      for (int k = 0; k < static_cast<int>(inc.size()); ++k) {
        int from = vg.edges[inc[k].vg_edge].from;
        LqmtResult r;
        if (is_goal || k == best || p == 2) {
          r = std::move(inc[k].free_solve);
        } else {
          const MpNode& src = g.nodes[from];
          std::vector<Vec3> init = full_state(path.waypoints[src.waypoint], src.velocity,
                                              src.arrival_derivs, p);
          r = lqmt_solve_pinned(init, arrival, rho, p);
        }
        int id = static_cast<int>(g.edges.size());
        g.edges.push_back({from, to, std::move(r.segment), edge_cost(r, mode), r.cost.T});
        g.out_edges[from].push_back(id);
        g.in_edges[to].push_back(id);
      }
      inc.clear();
      inc.shrink_to_fit();
    }
  }
  return g;
}

}  // namespace stitcher
