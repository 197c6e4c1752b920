#pragma once

#include "stitcher/types.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace stitcher {

/// One constant-acceleration arc of a per-axis control profile.
struct AccelArc {
  double accel = 0.0;
  double duration = 0.0;
};

/// Piecewise-constant-acceleration trajectory for a single axis.
struct AxisProfile {
  double s0 = 0.0;
  double v0 = 0.0;
  std::vector<AccelArc> arcs;

  double duration() const;
  double position(double t) const;
  double velocity(double t) const;
  double acceleration(double t) const;
  /// Max |accel| over all arcs.
  double accel_bound() const;
};

/// Minimum-time solution of the input-constrained 1D double integrator.
/// The control is bang-bang with at most one switch; the switch time and
/// total duration come from the quadratic relating peak velocity to the
/// displacement.
struct BangBang1D {
  double s0 = 0.0, v0 = 0.0, sf = 0.0, vf = 0.0;
  double u_bound = 0.0;
  double T = 0.0;
  AxisProfile profile;  // <= 2 arcs
};

BangBang1D min_time_1d(double s0, double v0, double sf, double vf, double u_max);

struct SyncInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Three synchronized per-axis profiles, all with duration T*.
struct SyncProfile3D {
  std::array<AxisProfile, 3> axes;
  double duration = 0.0;                     // T* = max per-axis minimum time
  std::array<double, 3> axis_min_times{};    // unsynchronized minima
  int limiting_axis = 0;
};

/// Multi-axis synchronization: the limiting axis keeps its bang-bang minimum,
/// non-limiting axes re-solve for a reduced bound u' <= u_max reaching their
/// boundary states exactly at T*. When no two-arc solution at u' <= u_max
/// exists, a bang-coast-bang profile at u_max is used instead; if that also
/// fails, SyncInfeasible is thrown.
SyncProfile3D min_time_3d(const Vec3& r0, const Vec3& v0, const Vec3& rf,
                          const Vec3& vf, double u_max);

/// Fixed-duration transfer for one axis with |u| <= u_max, duration exactly T.
/// Requires T >= the axis minimum time.
AxisProfile fixed_time_profile_1d(double s0, double v0, double sf, double vf,
                                  double u_max, double T);

}  // namespace stitcher
