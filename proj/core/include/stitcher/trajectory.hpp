#pragma once

#include "stitcher/constraints.hpp"
#include "stitcher/lqmt.hpp"
#include "stitcher/types.hpp"
#include "stitcher/world.hpp"

#include <string>
#include <vector>

namespace stitcher {

/// Per-segment record of the checks that admitted it during search.
struct SegmentAudit {
  bool collision_checked = false;
  bool constraint_checked = false;
  double check_dt = 0.0;
};

/// Ordered, stitched motion primitives. Position, velocity, and acceleration
/// are continuous at stitch points (for order p >= 3); jerk may jump.
struct Trajectory {
  std::vector<PolySegment> segments;
  std::vector<double> start_times;  // per-segment offset into global time
  std::vector<SegmentAudit> audit;
  double total_duration = 0.0;
  double total_cost = 0.0;

  bool empty() const { return segments.empty(); }
  /// Evaluate the order-th derivative at global time t in [0, total_duration].
  Vec3 state(double t, int order) const;
};

/// Independent post-hoc audit: re-checks all constraints at a dense dt
/// (default 0.01 s) against the exact bounds plus a small numeric slack, and
/// re-checks clearance along the way. Returns a human-readable failure
/// description or the empty string.
struct AuditOptions {
  double dt = 0.01;
  double slack = 1e-6;
  bool check_collisions = true;
  bool check_continuity = true;
};
std::string audit_trajectory(const Trajectory& traj, const World& world,
                             const ConstraintSet& cs, const AuditOptions& opts = {});

/// segments-json export: {duration, p, axis_coeffs[3][2p], t_offset} per
/// segment. Round-trips bit-exactly through parse_trajectory_json.
std::string trajectory_to_json(const Trajectory& traj);
Trajectory parse_trajectory_json(const std::string& text);

/// samples-csv export with header
/// t,x,y,z,vx,vy,vz,ax,ay,az,jx,jy,jz,thrust,tilt_deg,omega_norm,speed.
std::string trajectory_to_samples_csv(const Trajectory& traj, double dt);

}  // namespace stitcher
