#include "experiments.hpp"

#include "stitcher/collision.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace stitcher {
namespace experiments {

namespace {

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const Aabb kBounds{Vec3(0, 0, 0), Vec3(50, 50, 5)};
constexpr double kVoxel = 0.2;
constexpr double kVehicleRadius = 0.25;

std::vector<Vec3> anchor_points() {
  std::vector<Vec3> a;
  for (double y : {10.0, 25.0, 40.0}) {
    a.emplace_back(2.5, y, 2.5);
    a.emplace_back(47.5, y, 2.5);
  }
  return a;
}

}  // namespace

std::shared_ptr<World> make_world(MapKind kind, std::uint64_t seed, const Vec3&,
                                  const Vec3&) {
  static std::map<std::pair<int, std::uint64_t>, std::shared_ptr<World>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(static_cast<int>(kind), seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  MapGenParams params;
  params.kind = kind;
  params.bounds = kBounds;
  params.spacing = kVoxel;
  params.clear_regions = anchor_points();
  params.clear_radius = 2.5;
  switch (kind) {
    case MapKind::perlin_noise:
      params.density = 0.34;
      params.perlin_frequency = 0.10;
      break;
    case MapKind::random_forest:
      params.density = 120;  // pillars
      params.pillar_radius = 0.3;
      break;
    case MapKind::corridor:
      params.corridor_width = 3.0;
      break;
  }

  std::shared_ptr<World> world;
  for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
    params.seed = static_cast<std::uint32_t>(seed + 101 * attempt);
    try {
      PointCloud cloud = generate_map(params);
      world = std::make_shared<World>(std::move(cloud), kVoxel, kVehicleRadius, kBounds);
      break;
    } catch (const std::runtime_error&) {
      continue;  // blocked map, reseed
    }
  }
  if (!world) throw std::runtime_error("make_world: could not generate a connected map");
  cache.emplace(key, world);
  return world;
}

Instance make_instance(MapKind kind, std::uint64_t seed, const std::vector<int>& wanted,
                       int attempts) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
  std::uniform_real_distribution<double> jitter(-0.8, 0.8);
  std::uniform_real_distribution<double> jz(1.5, 3.5);
  std::uniform_int_distribution<int> pick(0, 2);
  const double ys[3] = {10.0, 25.0, 40.0};

  Instance best;
  int best_gap = std::numeric_limits<int>::max();
  auto world = make_world(kind, seed % 8, Vec3::Zero(), Vec3::Zero());
  for (int a = 0; a < attempts; ++a) {
    Vec3 start(2.5 + jitter(rng), ys[pick(rng)] + jitter(rng), jz(rng));
    Vec3 goal(47.5 + jitter(rng), ys[pick(rng)] + jitter(rng), jz(rng));
    Instance inst;
    inst.kind = kind;
    inst.seed = seed;
    inst.world = world;
    inst.start = start;
    inst.goal = goal;
    std::vector<Vec3> raw;
    try {
      raw = grid_astar(*world, start, goal);
    } catch (const NoPathExists&) {
      continue;
    }
    if ((raw.front() - start).norm() > 1e-9) raw.insert(raw.begin(), start);
    if ((raw.back() - goal).norm() > 1e-9) raw.push_back(goal);
    inst.path = sparsify(*world, raw);
    int n = inst.path.waypoint_count();
    if (wanted.empty()) return inst;
    int gap = std::numeric_limits<int>::max();
    for (int w : wanted) gap = std::min(gap, std::abs(n - w));
    if (gap == 0) return inst;
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(inst);
    }
  }
  if (!best.world) throw std::runtime_error("make_instance: no path found in any attempt");
  return best;
}

int worker_count() {
  const char* env = std::getenv("STITCHER_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

PlanRequest request_for(const Instance& inst, const PlanRequest& base) {
  PlanRequest req = base;
  req.start = inst.start;
  req.goal = inst.goal;
  req.seed = inst.seed;
  return req;
}

// ---------------------------------------------------------------------------
// velocity-set suite: nested speed chains {5,7,9,11} against dense Dijkstra.
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> nested_speed_chain(double v_max) {
  std::vector<std::vector<double>> chain;
  std::vector<double> s = {0.0, 0.25 * v_max, 0.5 * v_max, 0.75 * v_max, v_max};
  chain.push_back(s);
  for (auto add : {std::pair{0.125, 0.875}, std::pair{0.375, 0.625},
                   std::pair{0.0625, 0.9375}}) {
    s.push_back(add.first * v_max);
    s.push_back(add.second * v_max);
    std::sort(s.begin(), s.end());
    chain.push_back(s);
  }
  return chain;
}

std::vector<std::vector<Vec3>> velocity_lists(const GeometricPath& path,
                                              const std::vector<double>& speeds,
                                              const std::vector<std::vector<Vec3>>& dirs) {
  std::vector<std::vector<Vec3>> out(std::max(0, path.waypoint_count() - 2));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (double m : speeds) {
      if (m <= 1e-12) {
        out[i].push_back(Vec3::Zero());
        continue;
      }
      for (const Vec3& d : dirs[i]) out[i].push_back(m * d);
    }
  }
  return out;
}

struct RunOutcome {
  bool success = false;
  double cost = 0.0;
  double duration = 0.0;
  double ms = 0.0;
  long generated_edges = 0;
};

RunOutcome run_explicit(const Instance& inst, const PlanRequest& req,
                        const std::vector<std::vector<Vec3>>& velocities,
                        bool use_heuristic) {
  RunOutcome out;
  auto t0 = Clock::now();
  VelocityGraph vg = build_velocity_graph_explicit(inst.path, velocities,
                                                   req.start_velocity,
                                                   req.constraints.stage2_accel_bound());
  CostToGo ctg = dp_cost_to_go(vg);
  MpGraph gmp = preprocess_mp_graph(vg, inst.path, {req.start_acceleration}, req.rho,
                                    req.order_p, req.edge_cost_mode);
  SearchOptions opts;
  opts.use_heuristic = use_heuristic;
  SearchResult sr = astar_search(gmp, ctg, *inst.world, req.constraints, opts);
  out.ms = ms_since(t0);
  out.success = sr.success;
  out.cost = sr.cost;
  out.generated_edges = sr.stats.generated_edges;
  if (sr.success) {
    Trajectory traj = extract_trajectory(gmp, sr, req.constraints);
    out.duration = traj.total_duration;
  }
  return out;
}

int velocity_set_suite(const SuiteOptions& opts, const PlanRequest& base) {
  std::ofstream csv(opts.out_dir + "/velocity_set.csv");
  csv << "kind,seed,N,vm_size,cost,duration_s,planning_ms,dense_cost,dense_duration_s,"
         "dense_ms\n";
  csv.precision(10);
  int failures = 0;
  for (MapKind kind : {MapKind::perlin_noise, MapKind::random_forest}) {
    for (int s = 0; s < opts.seeds; ++s) {
      std::uint64_t seed = opts.seed_base + s;
      Instance inst = make_instance(kind, seed, {4, 6, 8});
      if (inst.path.waypoint_count() < 3) continue;
      PlanRequest req = request_for(inst, base);
      PathFeatures features = path_features(inst.path);
      VelocitySampleSet base_set = build_velocity_set(features, req.constraints.v_max,
                                                      req.n_speeds, req.cone_half_angle_deg);

      auto dense = oracle::densify_velocity_samples(inst.path, features, base_set,
                                                    req.constraints.v_max, 16, 4,
                                                    req.cone_half_angle_deg);
      auto t0 = Clock::now();
      oracle::DenseDijkstraResult dd = oracle::dense_dijkstra(
          inst.path, *inst.world, dense, req.start_velocity, req.start_acceleration,
          req.constraints, req.rho, req.order_p, req.edge_cost_mode);
      double dense_ms = ms_since(t0);

      for (const auto& speeds : nested_speed_chain(req.constraints.v_max)) {
        auto lists = velocity_lists(inst.path, speeds, base_set.directions);
        RunOutcome run = run_explicit(inst, req, lists, /*use_heuristic=*/true);
        if (!run.success || !dd.success) ++failures;
        csv << to_string(kind) << ',' << seed << ',' << inst.path.waypoint_count() << ','
            << speeds.size() << ',' << run.cost << ',' << run.duration << ',' << run.ms
            << ',' << dd.cost << ',' << dd.duration << ',' << dense_ms << '\n';
      }
    }
  }
  std::cout << "velocity-set suite written to " << opts.out_dir << "/velocity_set.csv\n";
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// greedy suite: Monte Carlo of greedy pre-processing vs the exhaustive graph.
// ---------------------------------------------------------------------------

GeometricPath synthetic_path(std::mt19937_64& rng, int n_waypoints) {
  std::uniform_real_distribution<double> seg_len(3.0, 8.0);
  std::uniform_real_distribution<double> turn(-0.9, 0.9);
  std::uniform_real_distribution<double> climb(-0.35, 0.35);
  GeometricPath path;
  Vec3 p(0, 0, 0);
  double yaw = 0.0;
  path.waypoints.push_back(p);
  for (int i = 1; i < n_waypoints; ++i) {
    yaw += turn(rng);
    double pitch = climb(rng);
    Vec3 dir(std::cos(yaw) * std::cos(pitch), std::sin(yaw) * std::cos(pitch),
             std::sin(pitch));
    p += seg_len(rng) * dir;
    path.waypoints.push_back(p);
  }
  path.raw_path = path.waypoints;
  return path;
}

int speeds_for_waypoints(int n) {
  if (n <= 4) return 5;
  if (n <= 6) return 4;
  if (n <= 8) return 3;
  return 2;
}

struct GreedyRow {
  int n = 0, m = 0;
  double greedy_cost = 0, exhaustive_cost = 0, excess_pct = 0;
  double greedy_ms = 0, exhaustive_ms = 0;
};

GreedyRow greedy_vs_exhaustive(std::uint64_t seed, const PlanRequest& base, int n_waypoints) {
  std::mt19937_64 rng(seed * 0xD1B54A32D192ED03ull + 7);
  GeometricPath path = synthetic_path(rng, n_waypoints);
  PlanRequest req = base;
  req.constraints = ConstraintSet::disabled();

  GreedyRow row;
  row.n = n_waypoints;
  std::vector<std::vector<Vec3>> lists(std::max(0, n_waypoints - 2));
  if (n_waypoints > 2) {
    PathFeatures features = path_features(path);
    VelocitySampleSet samples = build_velocity_set(
        features, 10.0, speeds_for_waypoints(n_waypoints), req.cone_half_angle_deg);
    lists = sample_velocity_lists(samples, n_waypoints - 2);
    row.m = static_cast<int>(lists[0].size());
  }

  const double u_max = 16.0;
  VelocityGraph vg = build_velocity_graph_explicit(path, lists, req.start_velocity, u_max);
  CostToGo ctg = dp_cost_to_go(vg);

  World empty_world(PointCloud{}, 0.5, 0.0, Aabb{Vec3(-500, -500, -500), Vec3(500, 500, 500)});
  auto t0 = Clock::now();
  MpGraph gmp = preprocess_mp_graph(vg, path, {req.start_acceleration}, req.rho, req.order_p,
                                    req.edge_cost_mode);
  SearchOptions opts;
  opts.prune = false;
  SearchResult sr = astar_search(gmp, ctg, empty_world, req.constraints, opts);
  row.greedy_ms = ms_since(t0);
  row.greedy_cost = sr.cost;

  t0 = Clock::now();
  oracle::ExhaustiveResult ex = oracle::exhaustive_mp_graph(
      vg, path, {req.start_acceleration}, req.rho, req.order_p, req.edge_cost_mode);
  row.exhaustive_ms = ms_since(t0);
  row.exhaustive_cost = ex.cost;
  row.excess_pct = 100.0 * (row.greedy_cost - row.exhaustive_cost) /
                   std::max(row.exhaustive_cost, 1e-12);
  return row;
}

int greedy_suite(const SuiteOptions& opts, const PlanRequest& base) {
  std::ofstream csv(opts.out_dir + "/greedy.csv");
  csv << "seed,N,M,greedy_cost,exhaustive_cost,excess_pct,greedy_ms,exhaustive_ms\n";
  csv.precision(10);
  std::vector<GreedyRow> rows(opts.seeds);
  parallel_for(opts.seeds, [&](int i) {
    std::uint64_t seed = opts.seed_base + i;
    std::mt19937_64 rng(seed);
    int n = 2 + static_cast<int>(rng() % 9);  // N in [2, 10]
    rows[i] = greedy_vs_exhaustive(seed, base, n);
  });
  double mean = 0, worst = 0;
  for (int i = 0; i < opts.seeds; ++i) {
    const auto& r = rows[i];
    csv << (opts.seed_base + i) << ',' << r.n << ',' << r.m << ',' << r.greedy_cost << ','
        << r.exhaustive_cost << ',' << r.excess_pct << ',' << r.greedy_ms << ','
        << r.exhaustive_ms << '\n';
    mean += r.excess_pct / opts.seeds;
    worst = std::max(worst, r.excess_pct);
  }
  nlohmann::json j{{"mean_excess_pct", mean}, {"max_excess_pct", worst},
                   {"realizations", opts.seeds}};
  std::ofstream(opts.out_dir + "/greedy_summary.json") << j.dump(2) << '\n';
  std::cout << "greedy suite: mean excess " << mean << "%, max " << worst << "%\n";
  return 0;
}

// ---------------------------------------------------------------------------
// heuristic suite: generated-edge reduction vs Dijkstra (Table-2-style grid).
// ---------------------------------------------------------------------------

int heuristic_suite(const SuiteOptions& opts, const PlanRequest& base) {
  std::ofstream csv(opts.out_dir + "/heuristic.csv");
  csv << "kind,seed,N,edge_cost,accel_model,astar_edges,dijkstra_edges,reduction_pct,"
         "astar_cost,dijkstra_cost\n";
  csv.precision(10);
  const std::vector<std::pair<EdgeCostMode, AccelModel>> grid = {
      {EdgeCostMode::lqmt, AccelModel::admissible_truncated_cone},
      {EdgeCostMode::time, AccelModel::admissible_truncated_cone},
      {EdgeCostMode::time, AccelModel::admissible_box},
      {EdgeCostMode::time, AccelModel::inadmissible_truncated_cone},
  };
  for (MapKind kind : {MapKind::perlin_noise, MapKind::random_forest}) {
    for (int s = 0; s < opts.seeds; ++s) {
      std::uint64_t seed = opts.seed_base + s;
      Instance inst = make_instance(kind, seed, {4, 6, 8});
      for (const auto& [mode, model] : grid) {
        PlanRequest req = request_for(inst, base);
        req.edge_cost_mode = mode;
        req.constraints.accel_model = model;
        // |V_m| = 11 with |V_d| = 3 for the heuristic study
        req.n_speeds = 11;

        PathFeatures features;
        VelocitySampleSet samples;
        if (inst.path.waypoint_count() > 2) {
          features = path_features(inst.path);
          samples = build_velocity_set(features, req.constraints.v_max, req.n_speeds,
                                       req.cone_half_angle_deg);
        }
        VelocityGraph vg = build_velocity_graph(inst.path, samples, req.start_velocity,
                                                req.constraints.stage2_accel_bound());
        CostToGo ctg = dp_cost_to_go(vg);
        MpGraph gmp = preprocess_mp_graph(vg, inst.path, {req.start_acceleration}, req.rho,
                                          req.order_p, req.edge_cost_mode);
        SearchResult astar = astar_search(gmp, ctg, *inst.world, req.constraints);
        SearchOptions od;
        od.use_heuristic = false;
        SearchResult dijkstra = astar_search(gmp, ctg, *inst.world, req.constraints, od);
        double red = dijkstra.stats.generated_edges > 0
                         ? 100.0 *
                               (dijkstra.stats.generated_edges - astar.stats.generated_edges) /
                               dijkstra.stats.generated_edges
                         : 0.0;
        csv << to_string(kind) << ',' << seed << ',' << inst.path.waypoint_count() << ','
            << to_string(mode) << ',' << to_string(model) << ','
            << astar.stats.generated_edges << ',' << dijkstra.stats.generated_edges << ','
            << red << ',' << astar.cost << ',' << dijkstra.cost << '\n';
      }
    }
  }
  std::cout << "heuristic suite written to " << opts.out_dir << "/heuristic.csv\n";
  return 0;
}

// ---------------------------------------------------------------------------
// motors suite: per-motor force profiles under individual thrust limits.
// ---------------------------------------------------------------------------

int motors_suite(const SuiteOptions& opts, const PlanRequest& base) {
  int failures = 0;
  for (int case_id = 0; case_id < 2; ++case_id) {
    MapKind kind = case_id == 0 ? MapKind::corridor : MapKind::random_forest;
    Instance inst = make_instance(kind, opts.seed_base + case_id, {});
    PlanRequest req = request_for(inst, base);
    req.constraints.motor_model = MotorModel::x_quad(0.5, Vec3(0.01, 0.01, 0.01), 0.125,
                                                     0.2, 0.15, 3.0);
    PlanResult res = plan(req, *inst.world);
    std::string name = opts.out_dir + "/motors_case" + std::to_string(case_id + 1);
    if (!res.success()) {
      std::cout << "motors case " << case_id + 1 << ": " << to_string(res.failure) << '\n';
      ++failures;
      continue;
    }
    std::ofstream csv(name + ".csv");
    csv << "t,F1,F2,F3,F4,speed\n";
    csv.precision(9);
    const MotorModel& mm = *req.constraints.motor_model;
    double f_lo = 1e9, f_hi = -1e9;
    const Trajectory& traj = *res.trajectory;
    for (double t = 0.0; t <= traj.total_duration; t += 0.005) {
      std::size_t i = 0;
      while (i + 1 < traj.segments.size() &&
             t > traj.start_times[i] + traj.segments[i].duration)
        ++i;
      FlatOutputs flat = flat_outputs(
          traj.segments[i],
          std::clamp(t - traj.start_times[i], 0.0, traj.segments[i].duration));
      Eigen::Vector4d F = motor_forces(flat, mm);
      f_lo = std::min(f_lo, F.minCoeff());
      f_hi = std::max(f_hi, F.maxCoeff());
      csv << t << ',' << F[0] << ',' << F[1] << ',' << F[2] << ',' << F[3] << ','
          << flat.speed << '\n';
    }
    nlohmann::json j{{"case", case_id + 1},
                     {"map", to_string(kind)},
                     {"min_motor_force_N", f_lo},
                     {"max_motor_force_N", f_hi},
                     {"bounds", {mm.motor_force_min, mm.motor_force_max}},
                     {"within_bounds", f_lo >= mm.motor_force_min && f_hi <= mm.motor_force_max},
                     {"duration_s", traj.total_duration}};
    std::ofstream(name + ".json") << j.dump(2) << '\n';
    if (!(f_lo >= mm.motor_force_min && f_hi <= mm.motor_force_max)) ++failures;
    std::cout << "motors case " << case_id + 1 << ": forces in [" << f_lo << ", " << f_hi
              << "] N\n";
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// timing suite: stage decomposition for an N=8-scale query.
// ---------------------------------------------------------------------------

int timing_suite(const SuiteOptions& opts, const PlanRequest& base) {
  Instance inst = make_instance(MapKind::perlin_noise, opts.seed_base, {8});
  PlanRequest req = request_for(inst, base);
  constexpr int kRuns = 20;
  std::vector<StageTimings> runs;
  PlanResult last;
  for (int i = 0; i < kRuns; ++i) {
    last = plan(req, *inst.world);
    if (!last.success()) return 1;
    runs.push_back(last.timings);
  }
  auto median_of = [&](auto member) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.*member);
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  nlohmann::json j{
      {"runs", kRuns},
      {"N", inst.path.waypoint_count()},
      {"median_ms",
       {{"stage1_geometric", median_of(&StageTimings::stage1_ms)},
        {"stage2_velocity_graph", median_of(&StageTimings::stage2_ms)},
        {"preprocess", median_of(&StageTimings::preprocess_ms)},
        {"stage3_search", median_of(&StageTimings::search_ms)},
        {"checking", median_of(&StageTimings::check_ms)},
        {"total", median_of(&StageTimings::total_ms)}}},
      {"last_report", nlohmann::json::parse(plan_report_json(last))}};
  std::ofstream(opts.out_dir + "/timing.json") << j.dump(2) << '\n';
  std::cout << "timing suite: median total " << median_of(&StageTimings::total_ms)
            << " ms over " << kRuns << " runs\n";
  return 0;
}

}  // namespace

int run_suite(const std::string& name, const SuiteOptions& opts, const PlanRequest& base) {
  std::filesystem::create_directories(opts.out_dir);
  if (name == "velocity-set") return velocity_set_suite(opts, base);
  if (name == "greedy") return greedy_suite(opts, base);
  if (name == "heuristic") return heuristic_suite(opts, base);
  if (name == "motors") return motors_suite(opts, base);
  if (name == "timing") return timing_suite(opts, base);
  std::cerr << "unknown suite: " << name << '\n';
  return 2;
}

// ---------------------------------------------------------------------------
// oracle subcommand
// ---------------------------------------------------------------------------

namespace {

oracle::OracleReport mintime_report(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0xA0761D6478BD642Full + 3);
  std::uniform_real_distribution<double> U(-10, 10);
  std::uniform_real_distribution<double> Uu(0.5, 16.0);
  double s0 = U(rng), v0 = U(rng), sf = U(rng), vf = U(rng), um = Uu(rng);
  oracle::OracleReport rep;
  rep.oracle = "mintime";
  rep.seed = seed;
  auto t0 = Clock::now();
  BangBang1D fast = min_time_1d(s0, v0, sf, vf, um);
  rep.fast_ms = ms_since(t0);
  t0 = Clock::now();
  rep.oracle_result = oracle::grid_min_time(s0, v0, sf, vf, um, 1e-4);
  rep.oracle_ms = ms_since(t0);
  rep.fast_result = fast.T;
  rep.relative_error = (fast.T - rep.oracle_result) / std::max(rep.oracle_result, 1e-12);
  rep.pass = std::abs(fast.T - rep.oracle_result) <= 1e-4;
  return rep;
}

oracle::OracleReport lqmt_report(std::uint64_t seed, const PlanRequest& base) {
  std::mt19937_64 rng(seed * 0xE7037ED1A0B428DBull + 5);
  std::uniform_real_distribution<double> U(-8, 8);
  std::vector<Vec3> init{Vec3(U(rng), U(rng), U(rng)), Vec3(U(rng), U(rng), U(rng)),
                         Vec3(U(rng), U(rng), U(rng))};
  Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
  oracle::OracleReport rep;
  rep.oracle = "lqmt";
  rep.seed = seed;
  auto t0 = Clock::now();
  LqmtResult fast = lqmt_solve(init, rf, vf, base.rho, base.order_p);
  rep.fast_ms = ms_since(t0);
  t0 = Clock::now();
  rep.oracle_result = oracle::lqmt_grid_min_cost(init, rf, vf, base.rho, base.order_p, 1e-4,
                                                 fast.cost.J / base.rho + 1e-4);
  rep.oracle_ms = ms_since(t0);
  rep.fast_result = fast.cost.J;
  rep.relative_error =
      (fast.cost.J - rep.oracle_result) / std::max(std::abs(rep.oracle_result), 1e-12);
  rep.pass = fast.cost.J <= rep.oracle_result + 1e-6 * (1.0 + std::abs(rep.oracle_result));
  return rep;
}

oracle::OracleReport collision_report(std::uint64_t seed) {
  auto world = make_world(MapKind::perlin_noise, seed % 4, Vec3::Zero(), Vec3::Zero());
  std::mt19937_64 rng(seed * 0x8EBC6AF09C88C6E3ull + 11);
  std::uniform_real_distribution<double> ux(5, 45), uz(0.5, 4.5), uv(-8, 8);
  std::vector<Vec3> init{Vec3(ux(rng), ux(rng), uz(rng)), Vec3(uv(rng), uv(rng), uv(rng) / 4),
                         Vec3::Zero()};
  Vec3 rf(ux(rng), ux(rng), uz(rng));
  Vec3 vf(uv(rng), uv(rng), uv(rng) / 4);
  PolySegment seg = lqmt_solve(init, rf, vf, 1000.0, 3).segment;

  oracle::OracleReport rep;
  rep.oracle = "collision";
  rep.seed = seed;
  double bound = segment_speed_bound(seg);
  CollisionCounters plain, cached_counters;
  auto t0 = Clock::now();
  bool fast = collision_check_map(*world, seg, bound, nullptr, &plain);
  rep.fast_ms = ms_since(t0);
  SafeSphereSet cache;
  bool warm = collision_check_map(*world, seg, bound, &cache, nullptr);
  bool cached = collision_check_cached(*world, seg, cache, bound, &cached_counters);
  t0 = Clock::now();
  bool dense = oracle::dense_collision_oracle(*world, seg, 1e-3);
  rep.oracle_ms = ms_since(t0);
  rep.fast_result = fast ? 1.0 : 0.0;
  rep.oracle_result = dense ? 1.0 : 0.0;
  rep.relative_error = 0.0;
  bool no_missed = !(dense && !fast);
  bool agree = (fast == cached) && (warm == fast);
  bool fewer_queries = cached_counters.map_queries <= plain.map_queries;
  rep.pass = no_missed && agree && fewer_queries;
  rep.note = "cached_queries=" + std::to_string(cached_counters.map_queries) +
             " uncached_queries=" + std::to_string(plain.map_queries);
  return rep;
}

oracle::OracleReport dense_dijkstra_report(std::uint64_t seed, const PlanRequest& base) {
  MapKind kind = seed % 2 == 0 ? MapKind::perlin_noise : MapKind::random_forest;
  Instance inst = make_instance(kind, seed, {4, 6});
  PlanRequest req = request_for(inst, base);
  oracle::OracleReport rep;
  rep.oracle = "dense-dijkstra";
  rep.seed = seed;
  rep.n_waypoints = inst.path.waypoint_count();

  auto t0 = Clock::now();
  PlanResult fast = plan(req, *inst.world);
  rep.fast_ms = ms_since(t0);
  if (!fast.success()) {
    rep.pass = false;
    rep.note = "fast planner failed: " + to_string(fast.failure);
    return rep;
  }
  PathFeatures features = path_features(inst.path);
  VelocitySampleSet base_set = build_velocity_set(features, req.constraints.v_max,
                                                  req.n_speeds, req.cone_half_angle_deg);
  auto dense = oracle::densify_velocity_samples(inst.path, features, base_set,
                                                req.constraints.v_max, 16, 4,
                                                req.cone_half_angle_deg);
  rep.samples_per_layer = dense.empty() ? 0 : static_cast<int>(dense[0].size());
  t0 = Clock::now();
  oracle::DenseDijkstraResult dd = oracle::dense_dijkstra(
      inst.path, *inst.world, dense, req.start_velocity, req.start_acceleration,
      req.constraints, req.rho, req.order_p, req.edge_cost_mode);
  rep.oracle_ms = ms_since(t0);
  rep.fast_result = fast.trajectory->total_cost;
  rep.oracle_result = dd.cost;
  rep.relative_error = (rep.fast_result - dd.cost) / std::max(dd.cost, 1e-12);
  rep.pass = dd.success && dd.cost <= rep.fast_result + 1e-9;
  return rep;
}

oracle::OracleReport exhaustive_report(std::uint64_t seed, const PlanRequest& base) {
  std::mt19937_64 rng(seed);
  int n = 2 + static_cast<int>(rng() % 9);
  GreedyRow row = greedy_vs_exhaustive(seed, base, n);
  oracle::OracleReport rep;
  rep.oracle = "exhaustive";
  rep.seed = seed;
  rep.n_waypoints = row.n;
  rep.samples_per_layer = row.m;
  rep.fast_result = row.greedy_cost;
  rep.oracle_result = row.exhaustive_cost;
  rep.relative_error = row.excess_pct / 100.0;
  rep.fast_ms = row.greedy_ms;
  rep.oracle_ms = row.exhaustive_ms;
  rep.pass = row.excess_pct <= 10.0 + 1e-9;
  if (row.n <= 3) rep.pass = rep.pass && std::abs(row.excess_pct) <= 1e-7;
  return rep;
}

}  // namespace

int run_oracle(const OracleOptions& opts, const PlanRequest& base) {
  std::ostream& out = opts.out ? *opts.out : std::cout;
  int failures = 0;
  for (int i = 0; i < opts.seeds; ++i) {
    std::uint64_t seed = opts.seed_base + i;
    oracle::OracleReport rep;
    if (opts.which == "mintime") rep = mintime_report(seed);
    else if (opts.which == "lqmt") rep = lqmt_report(seed, base);
    else if (opts.which == "collision") rep = collision_report(seed);
    else if (opts.which == "dense-dijkstra") rep = dense_dijkstra_report(seed, base);
    else if (opts.which == "exhaustive") rep = exhaustive_report(seed, base);
    else {
      std::cerr << "unknown oracle: " << opts.which << '\n';
      return 2;
    }
    out << rep.to_json_line() << '\n';
    if (!rep.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace experiments
}  // namespace stitcher
