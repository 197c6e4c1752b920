#include "stitcher/trajectory.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace stitcher {

Vec3 Trajectory::state(double t, int order) const {
  if (segments.empty()) throw std::out_of_range("Trajectory::state: empty trajectory");
  if (t < -1e-9 || t > total_duration + 1e-9) {
    throw std::out_of_range("Trajectory::state: t outside [0, total_duration]");
  }
  t = std::clamp(t, 0.0, total_duration);
  std::size_t i = 0;
  while (i + 1 < segments.size() && t > start_times[i] + segments[i].duration) ++i;
  double local = std::clamp(t - start_times[i], 0.0, segments[i].duration);
  return segments[i].eval(local, order);
}

std::string audit_trajectory(const Trajectory& traj, const World& world,
                             const ConstraintSet& cs, const AuditOptions& opts) {
  std::ostringstream fail;
  const double slack = opts.slack;

  if (opts.check_continuity) {
    for (std::size_t i = 0; i + 1 < traj.segments.size(); ++i) {
      const PolySegment& a = traj.segments[i];
      const PolySegment& b = traj.segments[i + 1];
      int orders = a.order_p >= 3 ? 3 : 2;  // position, velocity, acceleration
      for (int m = 0; m < orders; ++m) {
        double gap = (a.eval(a.duration, m) - b.eval(0.0, m)).norm();
        if (gap > 1e-6) {
          fail << "continuity order " << m << " gap " << gap << " at stitch " << i;
          return fail.str();
        }
      }
    }
  }

  for (std::size_t i = 0; i < traj.segments.size(); ++i) {
    const PolySegment& seg = traj.segments[i];
    const double T = seg.duration;
    int n = std::max(1, static_cast<int>(std::ceil(T / opts.dt)));
    for (int k = 0; k <= n; ++k) {
      double t = std::min(T, k * opts.dt);
      FlatOutputs flat = flat_outputs(seg, t);
      if (flat.singular) {
        fail << "segment " << i << " t=" << t << " singular thrust";
        return fail.str();
      }
      if (flat.speed > cs.v_max + slack) {
        fail << "segment " << i << " t=" << t << " speed " << flat.speed << " > " << cs.v_max;
        return fail.str();
      }
      if (cs.accel_model == AccelModel::admissible_box) {
        double a_inf = seg.eval(t, 2).cwiseAbs().maxCoeff();
        if (a_inf > cs.box_bound() + slack) {
          fail << "segment " << i << " t=" << t << " |a|_inf " << a_inf;
          return fail.str();
        }
      } else {
        if (flat.f_norm < cs.f_min - slack || flat.f_norm > cs.f_max + slack) {
          fail << "segment " << i << " t=" << t << " thrust " << flat.f_norm;
          return fail.str();
        }
        if (flat.f_norm * std::cos(cs.theta_max) > flat.f.z() + slack) {
          fail << "segment " << i << " t=" << t << " tilt " << rad2deg(flat.tilt);
          return fail.str();
        }
      }
      if (seg.order_p >= 3 && flat.omega.norm() > cs.omega_max + slack) {
        fail << "segment " << i << " t=" << t << " omega " << flat.omega.norm();
        return fail.str();
      }
      if (cs.motor_model) {
        Eigen::Vector4d F = motor_forces(flat, *cs.motor_model);
        if (F.minCoeff() < cs.motor_model->motor_force_min - slack ||
            F.maxCoeff() > cs.motor_model->motor_force_max + slack) {
          fail << "segment " << i << " t=" << t << " motor forces [" << F.transpose() << "]";
          return fail.str();
        }
      }
      if (opts.check_collisions) {
        double d = world.nearest_obstacle_distance(seg.eval(t, 0));
        if (d <= 0.0) {
          fail << "segment " << i << " t=" << t << " in collision";
          return fail.str();
        }
      }
    }
  }
  return {};
}

std::string trajectory_to_json(const Trajectory& traj) {
  nlohmann::json j;
  j["total_duration"] = traj.total_duration;
  j["total_cost"] = traj.total_cost;
  j["segments"] = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.segments.size(); ++i) {
    const PolySegment& s = traj.segments[i];
    nlohmann::json js;
    js["duration"] = s.duration;
    js["p"] = s.order_p;
    js["t_offset"] = traj.start_times[i];
    auto coeffs = nlohmann::json::array();
    for (int a = 0; a < 3; ++a) {
      auto axis = nlohmann::json::array();
      for (int c = 0; c < s.axis_coeffs[a].size(); ++c) axis.push_back(s.axis_coeffs[a][c]);
      coeffs.push_back(axis);
    }
    js["axis_coeffs"] = coeffs;
    j["segments"].push_back(js);
  }
  return j.dump(2);
}

Trajectory parse_trajectory_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Trajectory traj;
  traj.total_duration = j.at("total_duration").get<double>();
  traj.total_cost = j.at("total_cost").get<double>();
  for (const auto& js : j.at("segments")) {
    PolySegment s;
    s.duration = js.at("duration").get<double>();
    s.order_p = js.at("p").get<int>();
    const auto& coeffs = js.at("axis_coeffs");
    for (int a = 0; a < 3; ++a) {
      const auto& axis = coeffs.at(a);
      s.axis_coeffs[a] = Poly::Zero(axis.size());
      for (std::size_t c = 0; c < axis.size(); ++c) s.axis_coeffs[a][c] = axis[c].get<double>();
    }
    s.initial_derivs.assign(s.order_p, Vec3::Zero());
    s.final_derivs.assign(s.order_p, Vec3::Zero());
    for (int m = 0; m < s.order_p; ++m) {
      for (int a = 0; a < 3; ++a) {
        s.initial_derivs[m][a] = poly_eval_derivative(s.axis_coeffs[a], 0.0, m);
        s.final_derivs[m][a] = poly_eval_derivative(s.axis_coeffs[a], s.duration, m);
      }
    }
    s.final_position = s.final_derivs[0];
    s.final_velocity = s.final_derivs[1];
    traj.start_times.push_back(js.at("t_offset").get<double>());
    traj.segments.push_back(std::move(s));
  }
  traj.audit.resize(traj.segments.size());
  return traj;
}

std::string trajectory_to_samples_csv(const Trajectory& traj, double dt) {
  std::string out = "t,x,y,z,vx,vy,vz,ax,ay,az,jx,jy,jz,thrust,tilt_deg,omega_norm,speed\n";
  char line[512];
  int n = std::max(1, static_cast<int>(std::ceil(traj.total_duration / dt)));
  for (int k = 0; k <= n; ++k) {
    double t = std::min(traj.total_duration, k * dt);
    Vec3 r = traj.state(t, 0), v = traj.state(t, 1), a = traj.state(t, 2), jk = traj.state(t, 3);
    // flatness columns from the segment owning t
    std::size_t i = 0;
    while (i + 1 < traj.segments.size() && t > traj.start_times[i] + traj.segments[i].duration)
      ++i;
    FlatOutputs flat = flat_outputs(traj.segments[i],
                                    std::clamp(t - traj.start_times[i], 0.0,
                                               traj.segments[i].duration));
    std::snprintf(line, sizeof(line),
                  "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,"
                  "%.9g,%.9g\n",
                  t, r.x(), r.y(), r.z(), v.x(), v.y(), v.z(), a.x(), a.y(), a.z(), jk.x(),
                  jk.y(), jk.z(), flat.f_norm, rad2deg(flat.tilt), flat.omega.norm(),
                  flat.speed);
    out += line;
  }
  return out;
}

}  // namespace stitcher
