#include "experiments.hpp"

#include "stitcher/map_io.hpp"
#include "stitcher/planner.hpp"
#include "stitcher/velocity_graph.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace stitcher;

Vec3 parse_vec3(const std::string& s) {
  Vec3 v;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x(), &v.y(), &v.z()) != 3) {
    throw CLI::ValidationError("expected x,y,z, got: " + s);
  }
  return v;
}

Aabb parse_bounds(const std::string& s) {
  Aabb b;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &b.min.x(), &b.min.y(), &b.min.z(),
                  &b.max.x(), &b.max.y(), &b.max.z()) != 6) {
    throw CLI::ValidationError("expected xmin,ymin,zmin,xmax,ymax,zmax, got: " + s);
  }
  return b;
}

ConstraintSet load_constraints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constraints file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  ConstraintSet cs;
  if (j.contains("f_min")) cs.f_min = j["f_min"];
  if (j.contains("f_max")) cs.f_max = j["f_max"];
  if (j.contains("theta_max_deg")) cs.theta_max = deg2rad(j["theta_max_deg"].get<double>());
  if (j.contains("v_max")) cs.v_max = j["v_max"];
  if (j.contains("omega_max")) cs.omega_max = j["omega_max"];
  if (j.contains("accel_model"))
    cs.accel_model = accel_model_from_string(j["accel_model"].get<std::string>());
  if (j.contains("sample_dt")) cs.sample_dt = j["sample_dt"];
  if (j.contains("check_margin")) cs.check_margin = j["check_margin"];
  if (j.contains("u_max")) cs.u_max = j["u_max"];
  if (j.contains("inadmissible_scale")) cs.inadmissible_scale = j["inadmissible_scale"];
  if (j.contains("motor_model")) {
    const auto& m = j["motor_model"];
    Vec3 inertia(0.01, 0.01, 0.01);
    if (m.contains("inertia_diag")) {
      for (int k = 0; k < 3; ++k) inertia[k] = m["inertia_diag"][k];
    }
    cs.motor_model = MotorModel::x_quad(
        m.value("mass", 0.5), inertia, m.value("arm_length", 0.125),
        m.value("drag_coeff", 0.2), m.value("motor_force_min", 0.15),
        m.value("motor_force_max", 3.0));
  }
  return cs;
}

struct MapArgs {
  std::string map_path;
  std::string map_kind = "perlin_noise";
  std::uint32_t map_seed = 0;
  double map_density = 0.3;
  std::string bounds_str = "0,0,0,50,50,5";
  double voxel_size = 0.2;
  double vehicle_radius = 0.25;
  std::vector<std::string> clear;
  double clear_radius = 2.0;
};

void add_map_flags(CLI::App* cmd, MapArgs& args) {
  cmd->add_option("--map", args.map_path, "map file (overrides the generator)");
  cmd->add_option("--map-kind", args.map_kind, "perlin_noise | random_forest | corridor");
  cmd->add_option("--map-seed", args.map_seed, "generator seed");
  cmd->add_option("--map-density", args.map_density,
                  "fill fraction (perlin) or pillar count (forest)");
  cmd->add_option("--bounds", args.bounds_str, "xmin,ymin,zmin,xmax,ymax,zmax");
  cmd->add_option("--voxel-size", args.voxel_size, "occupancy voxel edge (m)");
  cmd->add_option("--vehicle-radius", args.vehicle_radius, "inflation radius (m)");
  cmd->add_option("--clear", args.clear, "obstacle-free region center x,y,z (repeatable)");
  cmd->add_option("--clear-radius", args.clear_radius, "clear region radius (m)");
}

World world_from_args(const MapArgs& args, const std::vector<Vec3>& extra_clear) {
  if (!args.map_path.empty()) {
    return world_from_map(load_map(args.map_path));
  }
  MapGenParams params;
  params.kind = map_kind_from_string(args.map_kind);
  params.seed = args.map_seed;
  params.density = args.map_density;
  params.bounds = parse_bounds(args.bounds_str);
  params.spacing = args.voxel_size;
  params.clear_radius = args.clear_radius;
  for (const auto& c : args.clear) params.clear_regions.push_back(parse_vec3(c));
  for (const Vec3& c : extra_clear) params.clear_regions.push_back(c);
  PointCloud cloud = generate_map(params);
  return build_world(std::move(cloud), args.voxel_size, args.vehicle_radius, params.bounds);
}

struct PlanArgs {
  std::string start = "2.5,25,2.5";
  std::string goal = "47.5,25,2.5";
  std::string start_vel = "0,0,0";
  std::string start_acc = "0,0,0";
  std::string constraints_path;
  double v_max = 10.0, f_min = 0.85, f_max = 18.75, theta_max_deg = 60.0, omega_max = 6.0;
  double rho = 1000.0, check_dt = 0.1, u_max = -1.0;
  int order_p = 3, n_speeds = 5;
  double cone_half_angle = 20.0;
  std::string edge_cost = "lqmt";
  std::string accel_model = "admissible_truncated_cone";
  bool motor_limits = false;
  bool retry_denser = false;
  std::uint64_t seed = 0;
};

void add_plan_flags(CLI::App* cmd, PlanArgs& args) {
  cmd->add_option("--start", args.start, "start position x,y,z");
  cmd->add_option("--goal", args.goal, "goal position x,y,z");
  cmd->add_option("--start-vel", args.start_vel, "start velocity x,y,z");
  cmd->add_option("--start-acc", args.start_acc, "start acceleration x,y,z");
  cmd->add_option("--constraints", args.constraints_path, "constraint config (JSON)");
  cmd->add_option("--v-max", args.v_max, "speed bound (m/s)");
  cmd->add_option("--f-min", args.f_min, "min mass-normalized thrust (m/s^2)");
  cmd->add_option("--f-max", args.f_max, "max mass-normalized thrust (m/s^2)");
  cmd->add_option("--theta-max", args.theta_max_deg, "max tilt (deg)");
  cmd->add_option("--omega-max", args.omega_max, "max body rate (rad/s)");
  cmd->add_option("--accel-model", args.accel_model,
                  "admissible_truncated_cone | admissible_box | inadmissible_truncated_cone");
  cmd->add_option("--check-dt", args.check_dt, "constraint sampling period (s)");
  cmd->add_option("--u-max", args.u_max, "per-axis acceleration bound (<=0: derive)");
  cmd->add_option("--rho", args.rho, "time penalty");
  cmd->add_option("--p", args.order_p, "integrator order (>= 2)");
  cmd->add_option("--n-speeds", args.n_speeds, "sampled speed count");
  cmd->add_option("--cone-half-angle", args.cone_half_angle, "direction cone (deg)");
  cmd->add_option("--edge-cost", args.edge_cost, "lqmt | time");
  cmd->add_flag("--motor-limits", args.motor_limits, "enforce per-motor thrust bounds");
  cmd->add_flag("--retry-denser", args.retry_denser, "retry once with denser speeds");
  cmd->add_option("--seed", args.seed, "query seed (recorded in reports)");
}

PlanRequest request_from_args(const PlanArgs& args) {
  PlanRequest req;
  req.start = parse_vec3(args.start);
  req.goal = parse_vec3(args.goal);
  req.start_velocity = parse_vec3(args.start_vel);
  req.start_acceleration = parse_vec3(args.start_acc);
  if (!args.constraints_path.empty()) {
    req.constraints = load_constraints(args.constraints_path);
  } else {
    req.constraints.v_max = args.v_max;
    req.constraints.f_min = args.f_min;
    req.constraints.f_max = args.f_max;
    req.constraints.theta_max = deg2rad(args.theta_max_deg);
    req.constraints.omega_max = args.omega_max;
    req.constraints.sample_dt = args.check_dt;
    req.constraints.u_max = args.u_max;
    req.constraints.accel_model = accel_model_from_string(args.accel_model);
  }
  if (args.motor_limits && !req.constraints.motor_model) {
    req.constraints.motor_model =
        MotorModel::x_quad(0.5, Vec3(0.01, 0.01, 0.01), 0.125, 0.2, 0.15, 3.0);
  }
  req.rho = args.rho;
  req.order_p = args.order_p;
  req.n_speeds = args.n_speeds;
  req.cone_half_angle_deg = args.cone_half_angle;
  req.edge_cost_mode = edge_cost_mode_from_string(args.edge_cost);
  req.retry_denser = args.retry_denser;
  req.seed = args.seed;
  return req;
}

int cmd_plan(const MapArgs& map_args, const PlanArgs& plan_args, const std::string& out_path,
             const std::string& format, double sample_dt, const std::string& report_path,
             const std::string& waypoints_path, const std::string& velgraph_prefix) {
  PlanRequest req = request_from_args(plan_args);
  World world = world_from_args(map_args, {req.start, req.goal});
  PlanResult res = plan(req, world);

  if (!waypoints_path.empty() && res.path.waypoint_count() > 0) {
    std::ofstream csv(waypoints_path);
    csv << "i,x,y,z\n";
    csv.precision(12);
    for (int i = 0; i < res.path.waypoint_count(); ++i) {
      const Vec3& w = res.path.waypoints[i];
      csv << i << ',' << w.x() << ',' << w.y() << ',' << w.z() << '\n';
    }
  }
  if (!velgraph_prefix.empty() && res.path.waypoint_count() >= 2) {
    VelocitySampleSet samples;
    if (res.path.waypoint_count() > 2) {
      samples = build_velocity_set(path_features(res.path), req.constraints.v_max,
                                   req.n_speeds, req.cone_half_angle_deg);
    }
    VelocityGraph vg = build_velocity_graph(res.path, samples, req.start_velocity,
                                            req.constraints.stage2_accel_bound());
    dump_velocity_graph_csv(vg, dp_cost_to_go(vg), velgraph_prefix + "_nodes.csv",
                            velgraph_prefix + "_edges.csv");
  }
  if (!report_path.empty()) {
    std::ofstream(report_path) << plan_report_json(res) << '\n';
  }

  if (!res.success()) {
    std::cerr << "planning failed: " << to_string(res.failure) << " (" << res.message
              << ")\n";
    return 1;
  }
  std::cout << plan_report_json(res) << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (format == "segments-json") {
      out << trajectory_to_json(*res.trajectory);
    } else if (format == "samples-csv") {
      out << trajectory_to_samples_csv(*res.trajectory, sample_dt);
    } else {
      std::cerr << "unknown export format: " << format << '\n';
      return 2;
    }
  }
  return 0;
}

int cmd_gen_map(const MapArgs& args, const std::string& out_path) {
  MapGenParams params;
  params.kind = map_kind_from_string(args.map_kind);
  params.seed = args.map_seed;
  params.density = args.map_density;
  params.bounds = parse_bounds(args.bounds_str);
  params.spacing = args.voxel_size;
  params.clear_radius = args.clear_radius;
  for (const auto& c : args.clear) params.clear_regions.push_back(parse_vec3(c));
  MapFile map;
  map.cloud = generate_map(params);
  map.voxel_size = args.voxel_size;
  map.vehicle_radius = args.vehicle_radius;
  map.bounds = params.bounds;
  save_map(out_path, map);
  std::cout << "wrote " << map.cloud.points.size() << " points to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stitcher: motion-primitive trajectory planner"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "plan a trajectory end to end");
  MapArgs plan_map;
  PlanArgs plan_args;
  std::string out_path, format = "segments-json", report_path, waypoints_path, velgraph_prefix;
  double sample_dt = 0.01;
  add_map_flags(plan_cmd, plan_map);
  add_plan_flags(plan_cmd, plan_args);
  plan_cmd->add_option("--out", out_path, "trajectory output file");
  plan_cmd->add_option("--export-format", format, "segments-json | samples-csv");
  plan_cmd->add_option("--sample-dt", sample_dt, "samples-csv period (s)");
  plan_cmd->add_option("--report", report_path, "instrumentation report (JSON)");
  plan_cmd->add_option("--waypoints-out", waypoints_path, "waypoint dump (CSV)");
  plan_cmd->add_option("--dump-velgraph", velgraph_prefix, "velocity graph CSV prefix");

  // gen-map
  auto* gen_cmd = app.add_subcommand("gen-map", "generate a synthetic map file");
  MapArgs gen_map;
  std::string gen_out = "map.txt";
  add_map_flags(gen_cmd, gen_map);
  gen_cmd->add_option("--out", gen_out, "output map file");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "run a brute-force certification");
  PlanArgs oracle_plan;
  std::string oracle_kind = "mintime", oracle_out;
  int oracle_seeds = 20;
  std::uint64_t oracle_seed_base = 1;
  add_plan_flags(oracle_cmd, oracle_plan);
  oracle_cmd
      ->add_option("--oracle", oracle_kind,
                   "dense-dijkstra | exhaustive | mintime | lqmt | collision")
      ->required();
  oracle_cmd->add_option("--seeds", oracle_seeds, "instance count");
  oracle_cmd->add_option("--seed-base", oracle_seed_base, "first seed");
  oracle_cmd->add_option("--out", oracle_out, "JSON-lines output (default stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment suite");
  PlanArgs bench_plan;
  std::string suite = "timing", out_dir = "bench_out";
  int bench_seeds = 30;
  std::uint64_t bench_seed_base = 1;
  add_plan_flags(bench_cmd, bench_plan);
  bench_cmd
      ->add_option("--suite", suite, "velocity-set | greedy | heuristic | motors | timing")
      ->required();
  bench_cmd->add_option("--seeds", bench_seeds, "instance count");
  bench_cmd->add_option("--seed-base", bench_seed_base, "first seed");
  bench_cmd->add_option("--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (plan_cmd->parsed()) {
      return cmd_plan(plan_map, plan_args, out_path, format, sample_dt, report_path,
                      waypoints_path, velgraph_prefix);
    }
    if (gen_cmd->parsed()) return cmd_gen_map(gen_map, gen_out);
    if (oracle_cmd->parsed()) {
      stitcher::experiments::OracleOptions opts;
      opts.which = oracle_kind;
      opts.seeds = oracle_seeds;
      opts.seed_base = oracle_seed_base;
      std::ofstream out_file;
      if (!oracle_out.empty()) {
        out_file.open(oracle_out);
        opts.out = &out_file;
      }
      return stitcher::experiments::run_oracle(opts, request_from_args(oracle_plan));
    }
    if (bench_cmd->parsed()) {
      stitcher::experiments::SuiteOptions opts;
      opts.seeds = bench_seeds;
      opts.seed_base = bench_seed_base;
      opts.out_dir = out_dir;
      return stitcher::experiments::run_suite(suite, opts, request_from_args(bench_plan));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
