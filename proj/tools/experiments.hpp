#pragma once

#include "stitcher/map_gen.hpp"
#include "stitcher/oracle.hpp"
#include "stitcher/planner.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stitcher {

/// Shared instance machinery for the oracle and bench subcommands.
namespace experiments {

struct Instance {
  MapKind kind;
  std::uint64_t seed = 0;
  std::shared_ptr<World> world;
  Vec3 start;
  Vec3 goal;
  GeometricPath path;  // sparsified
};

/// Deterministic desk-scale world: 50 x 50 x 5 m, voxel 0.2 m, radius 0.25 m.
std::shared_ptr<World> make_world(MapKind kind, std::uint64_t seed, const Vec3& start,
                                  const Vec3& goal);

/// Draws start/goal pairs until the sparsified path has a waypoint count in
/// `wanted` (empty = accept any N >= 2); gives up after `attempts` draws and
/// returns the closest instance found.
Instance make_instance(MapKind kind, std::uint64_t seed, const std::vector<int>& wanted,
                       int attempts = 40);

int worker_count();

/// Runs fn(i) for i in [0, n) across up to STITCHER_THREADS workers.
void parallel_for(int n, const std::function<void(int)>& fn);

struct SuiteOptions {
  int seeds = 30;
  std::uint64_t seed_base = 1;
  std::string out_dir = "bench_out";
};

int run_suite(const std::string& name, const SuiteOptions& opts, const PlanRequest& base);

struct OracleOptions {
  std::string which;
  int seeds = 20;
  std::uint64_t seed_base = 1;
  std::ostream* out = nullptr;
};

int run_oracle(const OracleOptions& opts, const PlanRequest& base);

}  // namespace experiments
}  // namespace stitcher
