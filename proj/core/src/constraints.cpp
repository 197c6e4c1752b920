#include "stitcher/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace stitcher {

AccelModel accel_model_from_string(const std::string& s) {
  if (s == "admissible_truncated_cone" || s == "cone") return AccelModel::admissible_truncated_cone;
  if (s == "admissible_box" || s == "box") return AccelModel::admissible_box;
  if (s == "inadmissible_truncated_cone" || s == "inadmissible")
    return AccelModel::inadmissible_truncated_cone;
  throw std::invalid_argument("unknown acceleration model: " + s);
}

std::string to_string(AccelModel m) {
  switch (m) {
    case AccelModel::admissible_truncated_cone: return "admissible_truncated_cone";
    case AccelModel::admissible_box: return "admissible_box";
    case AccelModel::inadmissible_truncated_cone: return "inadmissible_truncated_cone";
  }
  return "?";
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::none: return "none";
    case ViolationKind::thrust_min: return "thrust_min";
    case ViolationKind::thrust_max: return "thrust_max";
    case ViolationKind::tilt: return "tilt";
    case ViolationKind::speed: return "speed";
    case ViolationKind::omega: return "omega";
    case ViolationKind::accel_box: return "accel_box";
    case ViolationKind::motor_force: return "motor_force";
    case ViolationKind::singular_thrust: return "singular_thrust";
  }
  return "?";
}

MotorModel MotorModel::x_quad(double mass, const Vec3& inertia_diag, double arm_length,
                              double drag_coeff, double f_min, double f_max) {
  MotorModel mm;
  mm.mass = mass;
  mm.inertia_diag = inertia_diag;
  mm.arm_length = arm_length;
  mm.drag_coeff = drag_coeff;
  mm.motor_force_min = f_min;
  mm.motor_force_max = f_max;
  // Motors at (+-k, +-k) with k = l/sqrt(2); rotors 1,2 spin one way and
  // 3,4 the other. tau_x = sum y_i F_i, tau_y = -sum x_i F_i, tau_z = drag.
  const double k = arm_length / std::sqrt(2.0);
  const double c = drag_coeff;
  mm.mixing << 1, 1, 1, 1,
               k, -k, -k, k,
               -k, k, -k, k,
               c, c, -c, -c;
  return mm;
}

double ConstraintSet::cone_axis_accel_bound() const {
  double horizontal = f_max * std::sin(theta_max);
  double up = f_max - kGravity;
  double down = kGravity - f_min * std::cos(theta_max);
  return std::max({horizontal, up, down});
}

double ConstraintSet::stage2_accel_bound() const {
  double bound = accel_model == AccelModel::admissible_box ? box_bound()
                                                           : cone_axis_accel_bound();
  if (accel_model == AccelModel::inadmissible_truncated_cone) bound *= inadmissible_scale;
  return bound;
}

ConstraintSet ConstraintSet::disabled() {
  ConstraintSet cs;
  cs.f_min = 0.0;
  cs.f_max = std::numeric_limits<double>::infinity();
  cs.theta_max = M_PI;
  cs.v_max = std::numeric_limits<double>::infinity();
  cs.omega_max = std::numeric_limits<double>::infinity();
  cs.accel_model = AccelModel::admissible_box;
  cs.u_max = std::numeric_limits<double>::infinity();
  cs.check_margin = 0.0;
  return cs;
}

FlatOutputs flat_outputs(const PolySegment& seg, double t) {
  FlatOutputs out;
  Vec3 v = seg.eval(t, 1);
  Vec3 a = seg.eval(t, 2);
  out.speed = v.norm();
  out.f = a + Vec3(0.0, 0.0, kGravity);
  out.f_norm = out.f.norm();
  if (out.f_norm < 1e-9) {
    out.singular = true;
    return out;
  }
  Vec3 f_hat = out.f / out.f_norm;
  out.tilt = std::acos(std::clamp(f_hat.z(), -1.0, 1.0));

  if (seg.order_p < 3) return out;  // body rates need jerk

  // Attitude with yaw 0: z_B = f_hat, y_B = z_B x x_C, x_B = y_B x z_B.
  const Vec3 x_c(1.0, 0.0, 0.0);
  Vec3 y_b = f_hat.cross(x_c);
  double y_norm = y_b.norm();
  if (y_norm < 1e-9) {
    // Thrust parallel to the yaw reference (tilt ~ 90 deg); treat as singular.
    out.singular = true;
    return out;
  }
  y_b /= y_norm;
  Vec3 x_b = y_b.cross(f_hat);

  Vec3 jerk = seg.eval(t, 3);
  double n_dot = f_hat.dot(jerk);
  Vec3 f_hat_dot = (jerk - f_hat * n_dot) / out.f_norm;

  // [omega_y, -omega_x, 0]^T = R^T f_hat_dot
  out.omega.x() = -y_b.dot(f_hat_dot);
  out.omega.y() = x_b.dot(f_hat_dot);
  out.omega.z() = 0.0;

  Vec3 snap = seg.eval(t, 4);
  double n_ddot = f_hat_dot.dot(jerk) + f_hat.dot(snap);
  Vec3 f_hat_ddot =
      (snap - f_hat_dot * n_dot - f_hat * n_ddot) / out.f_norm - f_hat_dot * (n_dot / out.f_norm);

  // [omega_dot_y, -omega_dot_x, 0]^T = R^T f_hat_ddot - omega x (R^T f_hat_dot)
  Vec3 rt_fdot(x_b.dot(f_hat_dot), y_b.dot(f_hat_dot), f_hat.dot(f_hat_dot));
  Vec3 rt_fddot(x_b.dot(f_hat_ddot), y_b.dot(f_hat_ddot), f_hat.dot(f_hat_ddot));
  Vec3 e = rt_fddot - out.omega.cross(rt_fdot);
  out.omega_dot.x() = -e.y();
  out.omega_dot.y() = e.x();
  out.omega_dot.z() = 0.0;
  return out;
}

bool accel_constraint(const Vec3& a, AccelModel model, const ConstraintSet& cs,
                      double margin) {
  if (model == AccelModel::admissible_box) {
    double bound = cs.box_bound() * (1.0 - margin);
    return a.cwiseAbs().maxCoeff() <= bound;
  }
  Vec3 f = a + Vec3(0.0, 0.0, kGravity);
  double fn = f.norm();
  if (fn < cs.f_min * (1.0 + margin)) return false;
  if (fn > cs.f_max * (1.0 - margin)) return false;
  // Tilt: ||f|| cos(theta_max) <= f_z
  return fn * std::cos(cs.theta_max * (1.0 - margin)) <= f.z();
}

namespace {

CheckResult check_sample(const PolySegment& seg, const ConstraintSet& cs, double t) {
  const double m = cs.check_margin;
  FlatOutputs flat = flat_outputs(seg, t);
  if (flat.singular) return {false, ViolationKind::singular_thrust, t};
  if (flat.speed > cs.v_max * (1.0 - m)) return {false, ViolationKind::speed, t};

  if (cs.accel_model == AccelModel::admissible_box) {
    Vec3 a = seg.eval(t, 2);
    if (a.cwiseAbs().maxCoeff() > cs.box_bound() * (1.0 - m)) {
      return {false, ViolationKind::accel_box, t};
    }
  } else {
    if (flat.f_norm < cs.f_min * (1.0 + m)) return {false, ViolationKind::thrust_min, t};
    if (flat.f_norm > cs.f_max * (1.0 - m)) return {false, ViolationKind::thrust_max, t};
    if (flat.f_norm * std::cos(cs.theta_max * (1.0 - m)) > flat.f.z()) {
      return {false, ViolationKind::tilt, t};
    }
  }

  if (seg.order_p >= 3 && flat.omega.norm() > cs.omega_max * (1.0 - m)) {
    return {false, ViolationKind::omega, t};
  }

  if (cs.motor_model) {
    Eigen::Vector4d F = motor_forces(flat, *cs.motor_model);
    double lo = cs.motor_model->motor_force_min * (1.0 + m);
    double hi = cs.motor_model->motor_force_max * (1.0 - m);
    if (F.minCoeff() < lo || F.maxCoeff() > hi) {
      return {false, ViolationKind::motor_force, t};
    }
  }
  return {true, ViolationKind::none, t};
}

}  // namespace

CheckResult check_segment(const PolySegment& seg, const ConstraintSet& cs) {
  if (cs.sample_dt <= 0.0) throw std::invalid_argument("check_segment: sample_dt must be > 0");
  const double T = seg.duration;
  for (double t = 0.0; t < T; t += cs.sample_dt) {
    CheckResult r = check_sample(seg, cs, t);
    if (!r.feasible) return r;
  }
  return check_sample(seg, cs, T);
}

Eigen::Vector4d motor_forces(const FlatOutputs& flat, const MotorModel& mm) {
  Vec3 J = mm.inertia_diag;
  Vec3 Jw(J.x() * flat.omega.x(), J.y() * flat.omega.y(), J.z() * flat.omega.z());
  Vec3 Jwd(J.x() * flat.omega_dot.x(), J.y() * flat.omega_dot.y(), J.z() * flat.omega_dot.z());
  Vec3 tau = Jwd + flat.omega.cross(Jw);
  Eigen::Vector4d wrench(mm.mass * flat.f_norm, tau.x(), tau.y(), tau.z());
  return mm.mixing.inverse() * wrench;
}

}  // namespace stitcher
