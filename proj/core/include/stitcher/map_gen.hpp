#pragma once

#include "stitcher/types.hpp"
#include "stitcher/world.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stitcher {

enum class MapKind { perlin_noise, random_forest, corridor };

MapKind map_kind_from_string(const std::string& s);
std::string to_string(MapKind k);

struct MapGenParams {
  MapKind kind = MapKind::perlin_noise;
  std::uint32_t seed = 0;
  /// perlin: fill fraction in [0, 1]; random_forest: pillar count;
  /// corridor: unused.
  double density = 0.3;
  Aabb bounds{Vec3(0, 0, 0), Vec3(50, 50, 5)};
  double spacing = 0.2;           // point lattice spacing (m)
  double pillar_radius = 0.3;     // random_forest
  double corridor_width = 2.0;    // corridor
  double perlin_frequency = 0.12; // cycles per meter
  /// Obstacle-free margin regions (start/goal). Points inside any sphere of
  /// clear_radius around these centers are dropped.
  std::vector<Vec3> clear_regions;
  double clear_radius = 2.0;
};

/// Deterministic synthetic point-cloud maps. Throws std::runtime_error with a
/// diagnostic when the requested clear regions end up mutually disconnected
/// in a coarse occupancy check (fully blocked map).
PointCloud generate_map(const MapGenParams& params);

/// Classic gradient noise in [-1, 1], permutation table seeded per map.
class PerlinNoise {
 public:
  explicit PerlinNoise(std::uint32_t seed);
  double sample(const Vec3& p) const;

 private:
  std::array<int, 512> perm_;
};

}  // namespace stitcher
