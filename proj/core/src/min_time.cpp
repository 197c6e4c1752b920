#include "stitcher/min_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stitcher {

namespace {
constexpr double kTinyTime = 1e-12;
constexpr double kTinyState = 1e-12;

void append_arc(std::vector<AccelArc>& arcs, double accel, double duration) {
  if (duration <= kTinyTime) return;
  arcs.push_back({accel, duration});
}
}  // namespace

double AxisProfile::duration() const {
  double T = 0.0;
  for (const auto& a : arcs) T += a.duration;
  return T;
}

double AxisProfile::position(double t) const {
  double s = s0, v = v0;
  for (const auto& a : arcs) {
    double dt = std::min(std::max(t, 0.0), a.duration);
    if (dt > 0.0) {
      s += v * dt + 0.5 * a.accel * dt * dt;
      v += a.accel * dt;
    }
    t -= a.duration;
    if (t <= 0.0) break;
  }
  return s;
}

double AxisProfile::velocity(double t) const {
  double v = v0;
  for (const auto& a : arcs) {
    double dt = std::min(std::max(t, 0.0), a.duration);
    v += a.accel * dt;
    t -= a.duration;
    if (t <= 0.0) break;
  }
  return v;
}

double AxisProfile::acceleration(double t) const {
  for (const auto& a : arcs) {
    if (t <= a.duration) return a.accel;
    t -= a.duration;
  }
  return arcs.empty() ? 0.0 : arcs.back().accel;
}

double AxisProfile::accel_bound() const {
  double b = 0.0;
  for (const auto& a : arcs) b = std::max(b, std::abs(a.accel));
  return b;
}

BangBang1D min_time_1d(double s0, double v0, double sf, double vf, double u_max) {
  if (!(u_max > 0.0) || !std::isfinite(s0) || !std::isfinite(v0) ||
      !std::isfinite(sf) || !std::isfinite(vf)) {
    throw std::invalid_argument("min_time_1d: u_max must be positive, states finite");
  }
  BangBang1D out;
  out.s0 = s0;
  out.v0 = v0;
  out.sf = sf;
  out.vf = vf;
  out.u_bound = u_max;
  out.profile.s0 = s0;
  out.profile.v0 = v0;

  const double d = sf - s0;
  if (std::abs(d) <= kTinyState && std::abs(vf - v0) <= kTinyState) {
    out.T = 0.0;
    return out;
  }

  double best_T = std::numeric_limits<double>::infinity();
  double best_t1 = 0.0, best_t2 = 0.0;
  double best_sigma = 1.0;
  for (double sigma : {1.0, -1.0}) {
    // First arc sigma*u, second arc -sigma*u; vp is the peak (valley) velocity.
    double q = sigma * u_max * d + 0.5 * (v0 * v0 + vf * vf);
    if (q < 0.0) continue;
    double vp = sigma * std::sqrt(q);
    double t1 = sigma * (vp - v0) / u_max;
    double t2 = sigma * (vp - vf) / u_max;
    if (t1 < -1e-9 || t2 < -1e-9) continue;
    t1 = std::max(t1, 0.0);
    t2 = std::max(t2, 0.0);
    double T = t1 + t2;
    if (T < best_T) {
      best_T = T;
      best_t1 = t1;
      best_t2 = t2;
      best_sigma = sigma;
    }
  }
  if (!std::isfinite(best_T)) {
    // Unreachable for a double integrator; guard against NaN propagation.
    throw std::runtime_error("min_time_1d: no feasible bang-bang structure");
  }
  out.T = best_T;
  append_arc(out.profile.arcs, best_sigma * u_max, best_t1);
  append_arc(out.profile.arcs, -best_sigma * u_max, best_t2);
  return out;
}

namespace {

bool profile_reaches(const AxisProfile& p, double sf, double vf, double scale) {
  double tol = 1e-7 * (1.0 + scale);
  double T = p.duration();
  return std::abs(p.position(T) - sf) <= tol && std::abs(p.velocity(T) - vf) <= tol;
}

/// Two-arc solution with reduced bound u' reaching (sf, vf) in exactly T.
/// Returns false when no structure admits u' <= u_max.
bool two_arc_fixed_time(double s0, double v0, double sf, double vf, double u_max,
                        double T, AxisProfile& out) {
  const double d = sf - s0;
  const double dv = vf - v0;
  const double b = 4.0 * d - 2.0 * T * (v0 + vf);
  double best_u = std::numeric_limits<double>::infinity();
  double best_t1 = 0.0;
  double best_sigma = 1.0;

  for (double sigma : {1.0, -1.0}) {
    if (sigma * b < -1e-9 * (1.0 + std::abs(b))) continue;
    double disc = b * b + 4.0 * T * T * dv * dv;
    double u = (sigma * b + std::sqrt(disc)) / (2.0 * T * T);
    if (u < -1e-12) continue;
    if (u <= 1e-12) {
      // Coasting solution: valid only when the boundary states line up.
      if (std::abs(d - v0 * T) <= 1e-9 * (1.0 + std::abs(d)) && std::abs(dv) <= 1e-9) {
        out.arcs.clear();
        append_arc(out.arcs, 0.0, T);
        if (out.arcs.empty()) out.arcs.push_back({0.0, T});
        return true;
      }
      continue;
    }
    double t1 = 0.5 * (T + sigma * dv / u);
    double t2 = T - t1;
    if (t1 < -1e-9 || t2 < -1e-9) continue;
    if (u < best_u) {
      best_u = u;
      best_t1 = std::clamp(t1, 0.0, T);
      best_sigma = sigma;
    }
  }
  if (!std::isfinite(best_u) || best_u > u_max * (1.0 + 1e-9)) return false;
  best_u = std::min(best_u, u_max);
  out.arcs.clear();
  append_arc(out.arcs, best_sigma * best_u, best_t1);
  append_arc(out.arcs, -best_sigma * best_u, T - best_t1);
  if (out.arcs.empty()) out.arcs.push_back({0.0, T});
  return true;
}

/// Bang-coast-bang at full u_max timed to exactly T. Tries all four sign
/// structures and keeps the one with the longest coast.
bool three_arc_fixed_time(double s0, double v0, double sf, double vf,
                          double u_max, double T, AxisProfile& out) {
  const double d = sf - s0;
  const double dv = vf - v0;
  const double A = dv / u_max;  // sigma1*t1 + sigma3*t3
  double best_coast = -1.0;
  double best_t1 = 0, best_t3 = 0, best_s1 = 1, best_s3 = 1;

  for (double s1 : {1.0, -1.0}) {
    for (double s3 : {1.0, -1.0}) {
      // d - v0*T = s1*u*t1*(T - t1/2) + s3*u*t3^2/2, t3 = s3*(A - s1*t1).
      // Expand into a quadratic (or linear when s1 == s3) in t1.
      double c2 = 0.5 * u_max * (s3 - s1);
      double c1 = s1 * u_max * T - s3 * u_max * A * s1;  // note s3*u*(A - s1 t1)^2/2 cross term
      double c0 = 0.5 * s3 * u_max * A * A - (d - v0 * T);
      // (A - s1 t1)^2 = A^2 - 2 A s1 t1 + t1^2, s1^2 = 1
      // full quadratic: (-s1 u/2 + s3 u/2) t1^2 + (s1 u T - s3 u A s1) t1 + s3 u A^2/2 - (d - v0 T) = 0
      std::vector<double> candidates;
      if (std::abs(c2) < 1e-12) {
        if (std::abs(c1) > 1e-12) candidates.push_back(-c0 / c1);
      } else {
        double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
          double sq = std::sqrt(disc);
          candidates.push_back((-c1 + sq) / (2.0 * c2));
          candidates.push_back((-c1 - sq) / (2.0 * c2));
        }
      }
      for (double t1 : candidates) {
        if (t1 < -1e-9) continue;
        double t3 = s3 * (A - s1 * t1);
        if (t3 < -1e-9) continue;
        t1 = std::max(t1, 0.0);
        t3 = std::max(t3, 0.0);
        double coast = T - t1 - t3;
        if (coast < -1e-9) continue;
        coast = std::max(coast, 0.0);
        if (coast > best_coast) {
          best_coast = coast;
          best_t1 = t1;
          best_t3 = t3;
          best_s1 = s1;
          best_s3 = s3;
        }
      }
    }
  }
  if (best_coast < 0.0) return false;
  out.arcs.clear();
  append_arc(out.arcs, best_s1 * u_max, best_t1);
  append_arc(out.arcs, 0.0, best_coast);
  append_arc(out.arcs, best_s3 * u_max, best_t3);
  if (out.arcs.empty()) out.arcs.push_back({0.0, T});
  return true;
}

/// Reachability of (sf, vf) at exactly time T with |u| <= u_max. The reachable
/// displacement interval at fixed T and fixed velocity change is
/// [-(u/4)(T^2 - 2AT - A^2), (u/4)(T^2 + 2AT - A^2)] + v0*T with A = dv/u.
/// Returns the violation gap end: the smallest T' >= T that restores
/// feasibility, or T itself when already feasible.
double axis_feasible_time(double s0, double v0, double sf, double vf,
                          double u_max, double T) {
  const double A = (vf - v0) / u_max;
  const double d = sf - s0;
  // g_plus(T) = (u/4)(T^2 + 2AT - A^2) - (d - v0 T) >= 0
  // g_minus(T) = (d - v0 T) + (u/4)(T^2 - 2AT - A^2) >= 0
  const double q = u_max / 4.0;
  double worst = T;
  const double tol = 1e-9 * (1.0 + std::abs(d) + std::abs(v0) * T);
  {
    double c2 = q, c1 = 2.0 * q * A + v0, c0 = -q * A * A - d;
    double val = (c2 * T + c1) * T + c0;
    if (val < -tol) {
      double disc = c1 * c1 - 4.0 * c2 * c0;
      if (disc > 0.0) worst = std::max(worst, (-c1 + std::sqrt(disc)) / (2.0 * c2));
    }
  }
  {
    double c2 = q, c1 = -2.0 * q * A - v0, c0 = -q * A * A + d;
    double val = (c2 * T + c1) * T + c0;
    if (val < -tol) {
      double disc = c1 * c1 - 4.0 * c2 * c0;
      if (disc > 0.0) worst = std::max(worst, (-c1 + std::sqrt(disc)) / (2.0 * c2));
    }
  }
  return worst;
}

}  // namespace

AxisProfile fixed_time_profile_1d(double s0, double v0, double sf, double vf,
                                  double u_max, double T) {
  AxisProfile p;
  p.s0 = s0;
  p.v0 = v0;
  if (T <= kTinyTime) {
    return p;
  }
  double scale = std::abs(sf - s0) + T * (std::abs(v0) + std::abs(vf)) + 1.0;
  if (two_arc_fixed_time(s0, v0, sf, vf, u_max, T, p) &&
      profile_reaches(p, sf, vf, scale)) {
    return p;
  }
  if (three_arc_fixed_time(s0, v0, sf, vf, u_max, T, p) &&
      profile_reaches(p, sf, vf, scale)) {
    return p;
  }
  throw SyncInfeasible("fixed_time_profile_1d: no admissible profile at duration T");
}

SyncProfile3D min_time_3d(const Vec3& r0, const Vec3& v0, const Vec3& rf,
                          const Vec3& vf, double u_max) {
  SyncProfile3D out;
  std::array<BangBang1D, 3> bb;
  for (int k = 0; k < 3; ++k) {
    bb[k] = min_time_1d(r0[k], v0[k], rf[k], vf[k], u_max);
    out.axis_min_times[k] = bb[k].T;
    if (bb[k].T > out.axis_min_times[out.limiting_axis]) out.limiting_axis = k;
  }
  out.duration = out.axis_min_times[out.limiting_axis];

  // A non-limiting axis can have a duration gap: with opposing endpoint
  // velocities the reachable displacement at exactly T* may exclude the
  // target until T grows past the gap. Raise the shared horizon to the
  // smallest commonly feasible duration.
  for (int pass = 0; pass < 8; ++pass) {
    double raised = out.duration;
    for (int k = 0; k < 3; ++k) {
      raised = std::max(
          raised, axis_feasible_time(r0[k], v0[k], rf[k], vf[k], u_max, out.duration));
    }
    if (raised <= out.duration * (1.0 + 1e-12) + 1e-15) break;
    out.duration = raised;
  }

  for (int k = 0; k < 3; ++k) {
    if (bb[k].T >= out.duration - 1e-12) {
      out.axes[k] = bb[k].profile;
      // Pad with a zero-length coast so all axes report the same duration.
      double missing = out.duration - bb[k].T;
      if (missing > kTinyTime) append_arc(out.axes[k].arcs, 0.0, missing);
    } else {
      out.axes[k] =
          fixed_time_profile_1d(r0[k], v0[k], rf[k], vf[k], u_max, out.duration);
    }
  }
  return out;
}

}  // namespace stitcher
