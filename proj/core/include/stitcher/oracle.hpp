#pragma once

#include "stitcher/mp_graph.hpp"
#include "stitcher/search.hpp"
#include "stitcher/velocity_graph.hpp"
#include "stitcher/world.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace stitcher {
namespace oracle {

/// One certification record, serialized as a JSON line by the CLI.
struct OracleReport {
  std::string oracle;
  std::uint64_t seed = 0;
  int n_waypoints = 0;
  int samples_per_layer = 0;
  double fast_result = 0.0;
  double oracle_result = 0.0;
  double relative_error = 0.0;  // (fast - oracle) / oracle
  double fast_ms = 0.0;
  double oracle_ms = 0.0;
  bool pass = false;
  std::string note;

  std::string to_json_line() const;
};

/// Exhaustive search over bang-bang sign structures with switch times scanned
/// on a uniform grid (forward simulation only, no closed-form switching).
/// Certifies min_time_1d.
double grid_min_time(double s0, double v0, double sf, double vf, double u_max,
                     double resolution);

/// Dense final-time sweep of the closed-form LQMT cost on a uniform grid over
/// (0, t_hi]. Any duration above J_fast/rho cannot beat J_fast, so callers
/// certify with t_hi = J_fast/rho.
double lqmt_grid_min_cost(const std::vector<Vec3>& initial_derivs, const Vec3& rf,
                          const Vec3& vf, double rho, int p, double t_step, double t_hi);

/// Dense spatial sampling at `step_m` resolution along the segment; collision
/// iff some sample has non-positive clearance. Certifies Algorithm-2 stepping.
bool dense_collision_oracle(const World& world, const PolySegment& seg, double step_m);

/// Stage-3 machinery with a dense velocity sample set and no heuristic;
/// path-quality ceiling for sampling-density studies.
struct DenseDijkstraResult {
  bool success = false;
  double cost = 0.0;
  double duration = 0.0;
  SearchStats stats;
  Trajectory trajectory;
};
DenseDijkstraResult dense_dijkstra(const GeometricPath& path, const World& world,
                                   const std::vector<std::vector<Vec3>>& velocities,
                                   const Vec3& start_velocity, const Vec3& start_accel,
                                   const ConstraintSet& constraints, double rho, int p,
                                   EdgeCostMode mode);

/// Superset of `base` with `extra_speeds` additional magnitudes and
/// `extra_dirs` additional in-plane directions per waypoint (nested sets).
std::vector<std::vector<Vec3>> densify_velocity_samples(
    const GeometricPath& path, const PathFeatures& features,
    const VelocitySampleSet& base, double v_max, int extra_speeds, int extra_dirs,
    double cone_half_angle_deg);

/// Non-greedy reference: layered dynamic programming over states that carry
/// the full realized arrival-derivative history (deduplicated at 1e-9), every
/// edge a free-terminal LQMT primitive. Optimal over all acceleration
/// assignments the greedy pass approximates.
struct ExhaustiveResult {
  bool success = false;
  double cost = 0.0;
  long states = 0;
  long edges_solved = 0;
};

struct ExhaustiveLimits {
  std::size_t max_states = 2'000'000;
};

/// Throws std::invalid_argument with a size estimate when N > 10 or the state
/// bound would be exceeded.
ExhaustiveResult exhaustive_mp_graph(const VelocityGraph& vg, const GeometricPath& path,
                                     const std::vector<Vec3>& start_higher_derivs,
                                     double rho, int p, EdgeCostMode mode,
                                     const ExhaustiveLimits& limits = {});

std::size_t exhaustive_state_estimate(int n_waypoints, int samples_per_layer);

}  // namespace oracle
}  // namespace stitcher
