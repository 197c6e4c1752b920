#pragma once

#include "stitcher/constraints.hpp"
#include "stitcher/map_gen.hpp"
#include "stitcher/route.hpp"
#include "stitcher/search.hpp"
#include "stitcher/trajectory.hpp"
#include "stitcher/world.hpp"

#include <memory>
#include <optional>
#include <string>

namespace stitcher {

struct PlanRequest {
  Vec3 start = Vec3::Zero();
  Vec3 goal = Vec3::Zero();
  Vec3 start_velocity = Vec3::Zero();
  Vec3 start_acceleration = Vec3::Zero();
  ConstraintSet constraints;
  double rho = 1000.0;
  int order_p = 3;
  int n_speeds = 5;
  double cone_half_angle_deg = 20.0;
  EdgeCostMode edge_cost_mode = EdgeCostMode::lqmt;
  /// Retry once with a denser speed set when the pruned graph disconnects.
  bool retry_denser = false;
  std::uint64_t seed = 0;  // recorded in reports; planning itself is deterministic
};

enum class PlanFailure { none, no_geometric_path, graph_disconnected, infeasible };
std::string to_string(PlanFailure f);

struct StageTimings {
  double stage1_ms = 0.0;      // geometric path
  double stage2_ms = 0.0;      // velocity graph + DP
  double preprocess_ms = 0.0;  // motion primitive graph
  double search_ms = 0.0;      // A* including checks
  double check_ms = 0.0;       // collision + constraint share of search
  double total_ms = 0.0;
};

struct PlanResult {
  std::optional<Trajectory> trajectory;
  PlanFailure failure = PlanFailure::none;
  std::string message;
  GeometricPath path;
  StageTimings timings;
  SearchStats stats;

  bool success() const { return failure == PlanFailure::none && trajectory.has_value(); }
};

/// Full pipeline: grid A* + sparsification, velocity sampling + DP cost-to-go,
/// greedy pre-processing, heuristic-guided primitive search. Deterministic for
/// fixed inputs.
PlanResult plan(const PlanRequest& req, const World& world);

/// Instrumentation report (stage timings, search counters) as a JSON string.
std::string plan_report_json(const PlanResult& result);

}  // namespace stitcher
