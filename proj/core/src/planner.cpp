#include "stitcher/planner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>

namespace stitcher {

namespace {

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(PlanFailure f) {
  switch (f) {
    case PlanFailure::none: return "none";
    case PlanFailure::no_geometric_path: return "NoGeometricPath";
    case PlanFailure::graph_disconnected: return "GraphDisconnected";
    case PlanFailure::infeasible: return "Infeasible";
  }
  return "?";
}

PlanResult plan(const PlanRequest& req, const World& world) {
  PlanResult out;
  auto t_total = Clock::now();

  if (req.start_velocity.norm() > req.constraints.v_max) {
    out.failure = PlanFailure::infeasible;
    out.message = "start velocity exceeds v_max";
    return out;
  }

  // Stage 1: geometric path.
  auto t0 = Clock::now();
  std::vector<Vec3> raw;
  try {
    raw = grid_astar(world, req.start, req.goal);
  } catch (const NoPathExists& e) {
    out.failure = PlanFailure::no_geometric_path;
    out.message = e.what();
    out.timings.stage1_ms = ms_since(t0);
    out.timings.total_ms = ms_since(t_total);
    return out;
  }
  // Plan between the exact query states; the voxel centers only seed the path.
  if ((raw.front() - req.start).norm() > 1e-9) raw.insert(raw.begin(), req.start);
  if ((raw.back() - req.goal).norm() > 1e-9) raw.push_back(req.goal);
  out.path = sparsify(world, raw);
  out.timings.stage1_ms = ms_since(t0);

  const double u_max = req.constraints.stage2_accel_bound();

  for (int attempt = 0;; ++attempt) {
    int n_speeds = req.n_speeds + attempt * (req.n_speeds - 1);  // nested refinement

    // Stage 2: velocity graph and cost-to-go.
    t0 = Clock::now();
    VelocitySampleSet samples;
    if (out.path.waypoint_count() > 2) {
      samples = build_velocity_set(path_features(out.path), req.constraints.v_max, n_speeds,
                                   req.cone_half_angle_deg);
    }
    VelocityGraph vg = build_velocity_graph(out.path, samples, req.start_velocity, u_max);
    CostToGo ctg = dp_cost_to_go(vg);
    out.timings.stage2_ms = ms_since(t0);

    // Greedy pre-processing.
    t0 = Clock::now();
    MpGraph gmp = preprocess_mp_graph(vg, out.path, {req.start_acceleration}, req.rho,
                                      req.order_p, req.edge_cost_mode);
    out.timings.preprocess_ms = ms_since(t0);

    // Stage 3: heuristic-guided primitive search.
    t0 = Clock::now();
    SearchResult sr = astar_search(gmp, ctg, world, req.constraints);
    out.timings.search_ms = ms_since(t0);
    out.stats = sr.stats;
    out.timings.check_ms = sr.stats.check_collision_ms + sr.stats.check_constraint_ms;

    if (sr.success) {
      out.trajectory = extract_trajectory(gmp, sr, req.constraints);
      break;
    }
    if (req.retry_denser && attempt == 0) continue;
    out.failure = PlanFailure::graph_disconnected;
    out.message = "all candidate primitives pruned before reaching the goal";
    break;
  }
  out.timings.total_ms = ms_since(t_total);
  return out;
}

std::string plan_report_json(const PlanResult& result) {
  nlohmann::json j;
  j["success"] = result.success();
  j["failure"] = to_string(result.failure);
  if (!result.message.empty()) j["message"] = result.message;
  j["waypoints"] = result.path.waypoint_count();
  if (result.trajectory) {
    j["segments"] = result.trajectory->segments.size();
    j["total_duration_s"] = result.trajectory->total_duration;
    j["total_cost"] = result.trajectory->total_cost;
  }
  j["search"] = {
      {"generated_edges", result.stats.generated_edges},
      {"expanded_nodes", result.stats.expanded_nodes},
      {"pruned_collision", result.stats.pruned_collision},
      {"pruned_constraint", result.stats.pruned_constraint},
      {"map_queries", result.stats.collision.map_queries},
      {"cache_hits", result.stats.collision.cache_hits},
      {"spheres_created", result.stats.collision.spheres_created},
  };
  j["wall_time_ms"] = {
      {"stage1_geometric", result.timings.stage1_ms},
      {"stage2_velocity_graph", result.timings.stage2_ms},
      {"preprocess", result.timings.preprocess_ms},
      {"stage3_search", result.timings.search_ms},
      {"checking", result.timings.check_ms},
      {"total", result.timings.total_ms},
  };
  return j.dump(2);
}

}  // namespace stitcher
