#include "stitcher/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace stitcher {
namespace oracle {

std::string OracleReport::to_json_line() const {
  nlohmann::json j;
  j["oracle"] = oracle;
  j["seed"] = seed;
  j["N"] = n_waypoints;
  j["M"] = samples_per_layer;
  j["fast"] = fast_result;
  j["reference"] = oracle_result;
  j["relative_error"] = relative_error;
  j["fast_ms"] = fast_ms;
  j["oracle_ms"] = oracle_ms;
  j["pass"] = pass;
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

namespace {

/// Forward simulation of a two-arc bang profile; returns final position after
/// velocity-matching the second arc, or NaN when the second arc is invalid.
double simulate_structure(double s0, double v0, double vf, double u, double sigma,
                          double t1, double* total_time) {
  double v1 = v0 + sigma * u * t1;
  double s1 = s0 + v0 * t1 + 0.5 * sigma * u * t1 * t1;
  double t2 = sigma * (v1 - vf) / u;
  if (t2 < 0.0) return std::numeric_limits<double>::quiet_NaN();
  *total_time = t1 + t2;
  return s1 + v1 * t2 - 0.5 * sigma * u * t2 * t2;
}

}  // namespace

double grid_min_time(double s0, double v0, double sf, double vf, double u_max,
                     double resolution) {
  if (resolution <= 0.0) throw std::invalid_argument("grid_min_time: resolution must be > 0");
  const double d = sf - s0;
  if (std::abs(d) <= 1e-12 && std::abs(vf - v0) <= 1e-12) return 0.0;

  // Generous switch-time bound from the peak-velocity magnitude.
  double vp = std::sqrt(u_max * std::abs(d) + 0.5 * (v0 * v0 + vf * vf));
  double t1_max = (vp + std::abs(v0)) / u_max + 1.0;

  double best = std::numeric_limits<double>::infinity();
  for (double sigma : {1.0, -1.0}) {
    double prev_res = std::numeric_limits<double>::quiet_NaN();
    double prev_t = 0.0;
    for (double t1 = 0.0; t1 <= t1_max; t1 += resolution) {
      double T;
      double end = simulate_structure(s0, v0, vf, u_max, sigma, t1, &T);
      double res = end - sf;
      if (std::isnan(end)) {
        prev_res = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      if (std::abs(res) <= 1e-12) {
        best = std::min(best, T);
      } else if (!std::isnan(prev_res) && prev_res * res < 0.0) {
        // Bisect the bracket; still pure forward simulation.
        double lo = prev_t, hi = t1, flo = prev_res;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          double Tm;
          double fm = simulate_structure(s0, v0, vf, u_max, sigma, mid, &Tm) - sf;
          if (std::isnan(fm)) break;
          if (flo * fm <= 0.0) hi = mid;
          else {
            lo = mid;
            flo = fm;
          }
        }
        double Tz;
        double e2 = simulate_structure(s0, v0, vf, u_max, sigma, 0.5 * (lo + hi), &Tz);
        if (!std::isnan(e2)) best = std::min(best, Tz);
      }
      prev_res = res;
      prev_t = t1;
    }
  }
  return best;
}

double lqmt_grid_min_cost(const std::vector<Vec3>& initial_derivs, const Vec3& rf,
                          const Vec3& vf, double rho, int p, double t_step, double t_hi) {
  LqmtCostFunction jf = lqmt_cost_function(initial_derivs, {rf, vf}, rho, p);
  double best = std::numeric_limits<double>::infinity();
  for (double T = t_step; T <= t_hi; T += t_step) {
    best = std::min(best, jf.cost(T));
  }
  return best;
}

bool dense_collision_oracle(const World& world, const PolySegment& seg, double step_m) {
  double bound = segment_speed_bound(seg);
  int n = 1;
  if (bound > 0.0 && seg.duration > 0.0) {
    n = std::max(1, static_cast<int>(std::ceil(seg.duration * bound / step_m)));
  }
  for (int k = 0; k <= n; ++k) {
    double t = seg.duration * static_cast<double>(k) / n;
    if (world.nearest_obstacle_distance(seg.eval(t, 0)) <= 0.0) return true;
  }
  return false;
}

DenseDijkstraResult dense_dijkstra(const GeometricPath& path, const World& world,
                                   const std::vector<std::vector<Vec3>>& velocities,
                                   const Vec3& start_velocity, const Vec3& start_accel,
                                   const ConstraintSet& constraints, double rho, int p,
                                   EdgeCostMode mode) {
  DenseDijkstraResult out;
  VelocityGraph vg = build_velocity_graph_explicit(path, velocities, start_velocity,
                                                   constraints.stage2_accel_bound());
  CostToGo ctg = dp_cost_to_go(vg);
  MpGraph gmp = preprocess_mp_graph(vg, path, {start_accel}, rho, p, mode);
  SearchOptions opts;
  opts.use_heuristic = false;
  SearchResult sr = astar_search(gmp, ctg, world, constraints, opts);
  out.success = sr.success;
  out.cost = sr.cost;
  out.stats = sr.stats;
  if (sr.success) {
    out.trajectory = extract_trajectory(gmp, sr, constraints);
    out.duration = out.trajectory.total_duration;
  }
  return out;
}

std::vector<std::vector<Vec3>> densify_velocity_samples(
    const GeometricPath& path, const PathFeatures& features,
    const VelocitySampleSet& base, double v_max, int extra_speeds, int extra_dirs,
    double cone_half_angle_deg) {
  (void)path;
  // Nested magnitude refinement: repeatedly insert midpoints.
  std::vector<double> mags = base.magnitudes;
  std::sort(mags.begin(), mags.end());
  while (extra_speeds > 0) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < mags.size() && extra_speeds > 0; ++i) {
      next.push_back(0.5 * (mags[i] + mags[i + 1]));
      --extra_speeds;
    }
    if (next.empty()) break;
    mags.insert(mags.end(), next.begin(), next.end());
    std::sort(mags.begin(), mags.end());
  }
  (void)v_max;

  const double half = deg2rad(cone_half_angle_deg) / 2.0;
  std::vector<std::vector<Vec3>> out(features.hyperplane_normals.size());
  for (std::size_t i = 0; i < features.hyperplane_normals.size(); ++i) {
    std::vector<Vec3> dirs = base.directions.size() > i ? base.directions[i]
                                                        : std::vector<Vec3>{};
    const Vec3& normal = features.hyperplane_normals[i];
    const Vec3& heading = features.headings[i];
    Vec3 in_plane = heading - heading.dot(normal) * normal;
    Vec3 ortho;
    if (in_plane.norm() > 1e-9) ortho = in_plane.normalized();
    else {
      int k = 0;
      for (int m = 1; m < 3; ++m)
        if (std::abs(normal[m]) < std::abs(normal[k])) k = m;
      Vec3 e = Vec3::Zero();
      e[k] = 1.0;
      ortho = (e - normal.dot(e) * normal).normalized();
    }
    for (int k = 1; k <= extra_dirs / 2; ++k) {
      double ang = half * static_cast<double>(k) / (extra_dirs / 2 + 1);
      dirs.push_back((std::cos(ang) * normal + std::sin(ang) * ortho).normalized());
      dirs.push_back((std::cos(ang) * normal - std::sin(ang) * ortho).normalized());
    }
    // Deduplicate exact repeats.
    std::vector<Vec3> dedup;
    for (const Vec3& v : dirs) {
      bool seen = false;
      for (const Vec3& u : dedup)
        if ((u - v).norm() <= 1e-12) seen = true;
      if (!seen) dedup.push_back(v);
    }

    std::vector<Vec3> list;
    for (double m : mags) {
      if (m <= 1e-12) {
        list.push_back(Vec3::Zero());
        continue;
      }
      for (const Vec3& dd : dedup) list.push_back(m * dd);
    }
    std::vector<Vec3> final_list;
    for (const Vec3& v : list) {
      bool seen = false;
      for (const Vec3& u : final_list)
        if ((u - v).norm() <= 1e-12) seen = true;
      if (!seen) final_list.push_back(v);
    }
    out[i] = std::move(final_list);
  }
  // Uniform M across layers.
  std::size_t m_min = std::numeric_limits<std::size_t>::max();
  for (const auto& l : out) m_min = std::min(m_min, l.size());
  for (auto& l : out) l.resize(m_min);
  return out;
}

std::size_t exhaustive_state_estimate(int n_waypoints, int samples_per_layer) {
  // Worst case: every interior layer multiplies the acceleration histories.
  long double total = 1.0;
  long double layer_states = 1.0;
  for (int layer = 1; layer <= n_waypoints - 2; ++layer) {
    layer_states *= samples_per_layer;
    if (layer_states > 1e18) return std::numeric_limits<std::size_t>::max();
    total += layer_states;
  }
  total += 1.0;  // goal
  return total > 1e18 ? std::numeric_limits<std::size_t>::max()
                      : static_cast<std::size_t>(total);
}

namespace {

struct DerivKey {
  std::vector<long long> q;
  bool operator<(const DerivKey& other) const { return q < other.q; }
};

DerivKey quantize(const std::vector<Vec3>& derivs) {
  DerivKey key;
  key.q.reserve(derivs.size() * 3);
  for (const Vec3& d : derivs) {
    for (int a = 0; a < 3; ++a) key.q.push_back(llround(d[a] / 1e-9));
  }
  return key;
}

}  // namespace

ExhaustiveResult exhaustive_mp_graph(const VelocityGraph& vg, const GeometricPath& path,
                                     const std::vector<Vec3>& start_higher_derivs,
                                     double rho, int p, EdgeCostMode mode,
                                     const ExhaustiveLimits& limits) {
  if (vg.n_waypoints > 10) {
    throw std::invalid_argument(
        "exhaustive_mp_graph: N > 10 rejected, state estimate " +
        std::to_string(exhaustive_state_estimate(vg.n_waypoints, vg.samples_per_layer)));
  }
  ExhaustiveResult out;

  struct State {
    std::vector<Vec3> higher;  // orders 2..p-1
    double cost;
  };
  // Per velocity-graph node: deduplicated acceleration-history states.
  std::vector<std::map<DerivKey, State>> states(vg.nodes.size());
  {
    std::vector<Vec3> start_higher(std::max(0, p - 2), Vec3::Zero());
    for (std::size_t i = 0; i < start_higher.size() && i < start_higher_derivs.size(); ++i) {
      start_higher[i] = start_higher_derivs[i];
    }
    std::vector<Vec3> key_derivs = start_higher;
    states[vg.start_node].emplace(quantize(key_derivs), State{start_higher, 0.0});
  }

  std::size_t live_states = 1;
  for (std::size_t i = 0; i < vg.nodes.size(); ++i) {
    if (static_cast<int>(i) == vg.goal_node) break;  // nodes are in layer order
    if (states[i].empty()) continue;
    for (const auto& [key, st] : states[i]) {
      std::vector<Vec3> init;
      init.push_back(path.waypoints[vg.nodes[i].waypoint]);
      init.push_back(vg.nodes[i].velocity);
      for (const Vec3& h : st.higher) init.push_back(h);
      for (int e : vg.out_edges[i]) {
        int to = vg.edges[e].to;
        LqmtResult r = lqmt_solve(init, path.waypoints[vg.nodes[to].waypoint],
                                  vg.nodes[to].velocity, rho, p);
        out.edges_solved++;
        double cost = st.cost + (mode == EdgeCostMode::lqmt ? r.cost.J : r.cost.T);
        std::vector<Vec3> higher(r.segment.final_derivs.begin() + 2,
                                 r.segment.final_derivs.end());
        DerivKey k2 = quantize(higher);
        auto it = states[to].find(k2);
        if (it == states[to].end()) {
          states[to].emplace(std::move(k2), State{std::move(higher), cost});
          if (++live_states > limits.max_states) {
            throw std::invalid_argument(
                "exhaustive_mp_graph: state budget exceeded, estimate " +
                std::to_string(
                    exhaustive_state_estimate(vg.n_waypoints, vg.samples_per_layer)));
          }
        } else if (cost < it->second.cost) {
          it->second.cost = cost;
          it->second.higher = std::move(higher);
        }
      }
    }
    // Free the layer once expanded; nodes are in layer order.
    out.states += static_cast<long>(states[i].size());
    states[i].clear();
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& [key, st] : states[vg.goal_node]) best = std::min(best, st.cost);
  out.states += static_cast<long>(states[vg.goal_node].size());
  out.success = std::isfinite(best);
  out.cost = best;
  return out;
}

}  // namespace oracle
}  // namespace stitcher
