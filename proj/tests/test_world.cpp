#include "stitcher/map_gen.hpp"
#include "stitcher/map_io.hpp"
#include "stitcher/world.hpp"

#include <doctest.h>

#include <cstdio>
#include <random>

using namespace stitcher;

namespace {
const Aabb kSmall{Vec3(0, 0, 0), Vec3(10, 10, 5)};

double linear_scan(const PointCloud& cloud, const Vec3& q) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : cloud.points) best = std::min(best, (p - q).norm());
  return best;
}
}  // namespace

TEST_CASE("empty cloud: all free, infinite clearance") {
  World w(PointCloud{}, 0.2, 0.25, kSmall);
  CHECK(w.grid().occupied_count() == 0);
  CHECK(std::isinf(w.nearest_obstacle_distance(Vec3(5, 5, 2))));
}

TEST_CASE("single point at a voxel center with zero radius occupies that voxel only") {
  PointCloud cloud;
  Vec3i idx(10, 10, 5);
  VoxelGrid probe(kSmall.min, 0.2, Vec3i(50, 50, 25));
  cloud.points.push_back(probe.index_to_center(idx));
  World w(cloud, 0.2, 0.0, kSmall);
  CHECK(w.grid().occupied_count() == 1);
  CHECK(w.grid().occupied(idx));
}

TEST_CASE("point outside bounds is rejected with a diagnostic") {
  PointCloud cloud;
  cloud.points.push_back(Vec3(100, 0, 0));
  CHECK_THROWS_AS(World(cloud, 0.2, 0.25, kSmall), std::invalid_argument);
}

TEST_CASE("nearest distance equals the linear scan") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 10.0);
  std::uniform_real_distribution<double> Uz(0.0, 5.0);
  PointCloud cloud;
  for (int i = 0; i < 1000; ++i) cloud.points.emplace_back(U(rng), U(rng), Uz(rng));
  World w(cloud, 0.2, 0.2, kSmall);
  for (int i = 0; i < 100; ++i) {
    Vec3 q(U(rng), U(rng), Uz(rng));
    double ref = std::max(0.0, linear_scan(cloud, q) - 0.2);
    CHECK(std::abs(w.nearest_obstacle_distance(q) - ref) <= 1e-9);
  }
}

TEST_CASE("clearance is floored at zero on coincident points") {
  PointCloud cloud;
  cloud.points.push_back(Vec3(5, 5, 2));
  World w(cloud, 0.2, 0.2, kSmall);
  CHECK(w.nearest_obstacle_distance(Vec3(5, 5, 2)) == 0.0);
}

TEST_CASE("occupancy consistency on a small grid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.5, 4.5);
  PointCloud cloud;
  for (int i = 0; i < 40; ++i) cloud.points.emplace_back(U(rng), U(rng), U(rng));
  const double radius = 0.3, vs = 0.25;
  Aabb bounds{Vec3(0, 0, 0), Vec3(5, 5, 5)};
  World w(cloud, vs, radius, bounds);
  const VoxelGrid& g = w.grid();
  const double half_diag = 0.5 * vs * std::sqrt(3.0);
  std::uniform_real_distribution<double> Uoff(0.0, vs);
  for (int z = 0; z < g.dims().z(); ++z) {
    for (int y = 0; y < g.dims().y(); ++y) {
      for (int x = 0; x < g.dims().x(); ++x) {
        Vec3i idx(x, y, z);
        Vec3 center = g.index_to_center(idx);
        if (g.occupied(idx)) {
          CHECK(linear_scan(cloud, center) <= radius + half_diag + 1e-9);
        } else {
          // Sub-sample the cell: nothing inside may be within the radius.
          Vec3 corner = center - Vec3::Constant(vs / 2);
          for (int s = 0; s < 12; ++s) {
            Vec3 probe = corner + Vec3(Uoff(rng), Uoff(rng), Uoff(rng));
            CHECK(linear_scan(cloud, probe) > radius - 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("generators are deterministic and density 0 is empty") {
  MapGenParams params;
  params.kind = MapKind::perlin_noise;
  params.bounds = kSmall;
  params.seed = 7;
  params.density = 0.0;
  CHECK(generate_map(params).points.empty());

  params.density = 0.35;
  PointCloud a = generate_map(params);
  PointCloud b = generate_map(params);
  REQUIRE(a.points.size() == b.points.size());
  CHECK(!a.points.empty());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);

  params.seed = 8;
  PointCloud c = generate_map(params);
  bool differs = c.points.size() != a.points.size();
  for (std::size_t i = 0; !differs && i < a.points.size(); ++i) {
    differs = (a.points[i] - c.points[i]).norm() > 0;
  }
  CHECK(differs);
}

TEST_CASE("forest audit: pillar count, radius, and clearance") {
  MapGenParams params;
  params.kind = MapKind::random_forest;
  params.bounds = Aabb{Vec3(0, 0, 0), Vec3(20, 20, 5)};
  params.density = 30;  // pillars
  params.seed = 3;
  params.clear_regions = {Vec3(1.5, 1.5, 2.5), Vec3(18.5, 18.5, 2.5)};
  params.clear_radius = 1.5;
  PointCloud cloud = generate_map(params);
  REQUIRE(!cloud.points.empty());

  // Cluster points by (x, y) into pillars.
  std::vector<Vec3> centers;
  std::vector<int> counts;
  for (const Vec3& p : cloud.points) {
    bool found = false;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      Vec3 d = p - centers[c];
      d.z() = 0;
      if (d.norm() <= 2.5 * params.pillar_radius) {
        found = true;
        counts[c]++;
        break;
      }
    }
    if (!found) {
      centers.push_back(p);
      counts.push_back(1);
    }
  }
  CHECK(centers.size() == 30);
  for (const Vec3& p : cloud.points) {
    for (const Vec3& c : params.clear_regions) CHECK((p - c).norm() >= params.clear_radius);
  }
}

TEST_CASE("map file round trip") {
  MapFile map;
  map.voxel_size = 0.25;
  map.vehicle_radius = 0.3;
  map.bounds = kSmall;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(0.0, 10.0);
  for (int i = 0; i < 50; ++i) map.cloud.points.emplace_back(U(rng), U(rng), U(rng) / 2);
  const std::string path = "test_map_roundtrip.txt";
  save_map(path, map);
  MapFile loaded = load_map(path);
  std::remove(path.c_str());
  CHECK(loaded.voxel_size == map.voxel_size);
  CHECK(loaded.vehicle_radius == map.vehicle_radius);
  REQUIRE(loaded.cloud.points.size() == map.cloud.points.size());
  for (std::size_t i = 0; i < map.cloud.points.size(); ++i) {
    CHECK((loaded.cloud.points[i] - map.cloud.points[i]).norm() <= 1e-12);
  }
}

TEST_CASE("fully blocked map parameters raise a diagnostic") {
  MapGenParams params;
  params.kind = MapKind::perlin_noise;
  params.bounds = Aabb{Vec3(0, 0, 0), Vec3(6, 6, 2)};
  params.density = 1.0;  // fill everything
  params.seed = 1;
  params.clear_regions = {Vec3(1, 1, 1), Vec3(5, 5, 1)};
  params.clear_radius = 0.5;
  CHECK_THROWS_AS(generate_map(params), std::runtime_error);
}
