#pragma once

#include "stitcher/lqmt.hpp"
#include "stitcher/types.hpp"

#include <optional>
#include <string>

#include <Eigen/Dense>

namespace stitcher {

enum class AccelModel {
  admissible_truncated_cone,
  admissible_box,
  inadmissible_truncated_cone,
};

AccelModel accel_model_from_string(const std::string& s);
std::string to_string(AccelModel m);

/// Per-motor thrust model. The mixing matrix maps motor forces to the wrench
/// (T, tau_x, tau_y, tau_z); the default is an X configuration with arm
/// length l and rotor drag coefficient c.
struct MotorModel {
  double mass = 0.5;                      // kg
  Vec3 inertia_diag = Vec3(0.01, 0.01, 0.01);  // kg m^2
  double arm_length = 0.125;              // m
  double drag_coeff = 0.2;                // m
  double motor_force_min = 0.15;          // N
  double motor_force_max = 3.0;           // N
  Eigen::Matrix4d mixing = Eigen::Matrix4d::Zero();

  static MotorModel x_quad(double mass, const Vec3& inertia_diag, double arm_length,
                           double drag_coeff, double f_min, double f_max);
};

struct ConstraintSet {
  double f_min = 0.85;      // mass-normalized thrust lower bound (m/s^2)
  double f_max = 18.75;     // upper bound (m/s^2)
  double theta_max = deg2rad(60.0);  // tilt (rad)
  double v_max = 10.0;      // m/s
  double omega_max = 6.0;   // rad/s
  AccelModel accel_model = AccelModel::admissible_truncated_cone;
  double sample_dt = 0.1;   // s
  /// Relative headroom applied inside check_segment so accepted segments
  /// survive a much denser audit against the exact bounds. Tightens pruning
  /// only; never relaxes a bound.
  double check_margin = 0.02;
  /// Per-axis acceleration bound for the box model and for the double
  /// integrator of the heuristic. <= 0 means derive from the cone.
  double u_max = -1.0;
  /// Scale applied to the stage-2 bound for the inadmissible variant.
  double inadmissible_scale = 0.5;
  std::optional<MotorModel> motor_model;

  /// Largest per-axis acceleration the truncated cone permits.
  double cone_axis_accel_bound() const;
  /// Box/u_max bound actually enforced by the box model.
  double box_bound() const { return u_max > 0.0 ? u_max : cone_axis_accel_bound(); }
  /// Bound handed to the stage-2 double integrator (Eq. 2). Admissible models
  /// use the full bound; the inadmissible variant deliberately shrinks it.
  double stage2_accel_bound() const;

  static ConstraintSet disabled();
};

/// Differential-flatness outputs at one sample. For p >= 3 the body rates
/// come from the analytic derivative of the thrust direction; yaw is held at
/// zero, and omega_z is zero by convention.
struct FlatOutputs {
  Vec3 f = Vec3::Zero();       // mass-normalized thrust = a + g*z_hat
  double f_norm = 0.0;
  double tilt = 0.0;           // angle between f and z_hat, [0, pi]
  Vec3 omega = Vec3::Zero();   // body angular rate
  Vec3 omega_dot = Vec3::Zero();
  double speed = 0.0;
  bool singular = false;       // ||f|| < 1e-9: tilt/omega undefined
};

FlatOutputs flat_outputs(const PolySegment& seg, double t);

/// Membership test for one acceleration sample under the given model (exact
/// bounds unless margin > 0).
bool accel_constraint(const Vec3& a, AccelModel model, const ConstraintSet& cs,
                      double margin = 0.0);

enum class ViolationKind {
  none,
  thrust_min,
  thrust_max,
  tilt,
  speed,
  omega,
  accel_box,
  motor_force,
  singular_thrust,
};
std::string to_string(ViolationKind k);

struct CheckResult {
  bool feasible = true;
  ViolationKind kind = ViolationKind::none;
  double t = 0.0;  // first violating sample time
};

/// Uniform sampling at sample_dt (the endpoint T is always sampled); reports
/// the first violation.
CheckResult check_segment(const PolySegment& seg, const ConstraintSet& cs);

/// Motor forces F = M^-1 (T, tau) with T = m*||f|| and tau from the flatness
/// chain J*omega_dot + omega x J*omega.
Eigen::Vector4d motor_forces(const FlatOutputs& flat, const MotorModel& mm);

}  // namespace stitcher
