#include "stitcher/map_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace stitcher {

MapKind map_kind_from_string(const std::string& s) {
  if (s == "perlin" || s == "perlin_noise" || s == "perlin-noise") return MapKind::perlin_noise;
  if (s == "forest" || s == "random_forest" || s == "random-forest")
    return MapKind::random_forest;
  if (s == "corridor") return MapKind::corridor;
  throw std::invalid_argument("unknown map kind: " + s);
}

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::perlin_noise: return "perlin_noise";
    case MapKind::random_forest: return "random_forest";
    case MapKind::corridor: return "corridor";
  }
  return "?";
}

PerlinNoise::PerlinNoise(std::uint32_t seed) {
  std::array<int, 256> base;
  std::iota(base.begin(), base.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(base.begin(), base.end(), rng);
  for (int i = 0; i < 512; ++i) perm_[i] = base[i & 255];
}

namespace {
double fade(double t) { return t * t * t * (t * (t * 6 - 15) + 10); }
double lerp(double a, double b, double t) { return a + t * (b - a); }
double grad(int hash, double x, double y, double z) {
  int h = hash & 15;
  double u = h < 8 ? x : y;
  double v = h < 4 ? y : (h == 12 || h == 14 ? x : z);
  return ((h & 1) ? -u : u) + ((h & 2) ? -v : v);
}
}  // namespace

double PerlinNoise::sample(const Vec3& p) const {
  int X = static_cast<int>(std::floor(p.x())) & 255;
  int Y = static_cast<int>(std::floor(p.y())) & 255;
  int Z = static_cast<int>(std::floor(p.z())) & 255;
  double x = p.x() - std::floor(p.x());
  double y = p.y() - std::floor(p.y());
  double z = p.z() - std::floor(p.z());
  double u = fade(x), v = fade(y), w = fade(z);
  const auto& P = perm_;
  int A = P[X] + Y, AA = P[A] + Z, AB = P[A + 1] + Z;
  int B = P[X + 1] + Y, BA = P[B] + Z, BB = P[B + 1] + Z;
  return lerp(lerp(lerp(grad(P[AA], x, y, z), grad(P[BA], x - 1, y, z), u),
                   lerp(grad(P[AB], x, y - 1, z), grad(P[BB], x - 1, y - 1, z), u), v),
              lerp(lerp(grad(P[AA + 1], x, y, z - 1), grad(P[BA + 1], x - 1, y, z - 1), u),
                   lerp(grad(P[AB + 1], x, y - 1, z - 1), grad(P[BB + 1], x - 1, y - 1, z - 1),
                        u),
                   v),
              w);
}

namespace {

bool cleared(const MapGenParams& params, const Vec3& p) {
  for (const Vec3& c : params.clear_regions) {
    if ((p - c).norm() < params.clear_radius) return true;
  }
  return false;
}

void generate_perlin(const MapGenParams& params, PointCloud& cloud) {
  if (params.density <= 0.0) return;
  PerlinNoise noise(params.seed);
  const double threshold = 1.0 - 2.0 * std::min(params.density, 1.0);
  const Vec3 lo = params.bounds.min;
  const Vec3 hi = params.bounds.max;
  for (double z = lo.z() + 0.5 * params.spacing; z < hi.z(); z += params.spacing) {
    for (double y = lo.y() + 0.5 * params.spacing; y < hi.y(); y += params.spacing) {
      for (double x = lo.x() + 0.5 * params.spacing; x < hi.x(); x += params.spacing) {
        Vec3 p(x, y, z);
        if (noise.sample(p * params.perlin_frequency) > threshold && !cleared(params, p)) {
          cloud.points.push_back(p);
        }
      }
    }
  }
}

void generate_forest(const MapGenParams& params, PointCloud& cloud) {
  int pillars = static_cast<int>(std::llround(params.density));
  if (pillars <= 0) return;
  std::mt19937 rng(params.seed);
  const Vec3 lo = params.bounds.min;
  const Vec3 hi = params.bounds.max;
  double margin = params.pillar_radius + params.spacing;
  std::uniform_real_distribution<double> ux(lo.x() + margin, hi.x() - margin);
  std::uniform_real_distribution<double> uy(lo.y() + margin, hi.y() - margin);

  int placed = 0;
  int attempts = 0;
  while (placed < pillars && attempts < pillars * 200) {
    ++attempts;
    Vec3 center(ux(rng), uy(rng), 0.0);
    // Keep pillars clear of the margin regions so clearance survives inflation.
    bool blocked = false;
    for (const Vec3& c : params.clear_regions) {
      Vec3 c2(c.x(), c.y(), 0.0);
      if ((center - c2).norm() < params.clear_radius + params.pillar_radius) blocked = true;
    }
    if (blocked) continue;
    ++placed;
    int n_ring = std::max(8, static_cast<int>(std::ceil(2 * M_PI * params.pillar_radius /
                                                        params.spacing)));
    for (double z = lo.z() + 0.5 * params.spacing; z < hi.z(); z += params.spacing) {
      for (int k = 0; k < n_ring; ++k) {
        double ang = 2 * M_PI * k / n_ring;
        Vec3 p(center.x() + params.pillar_radius * std::cos(ang),
               center.y() + params.pillar_radius * std::sin(ang), z);
        if (params.bounds.contains(p)) cloud.points.push_back(p);
      }
    }
  }
  if (placed < pillars) {
    throw std::runtime_error("generate_map: could not place " + std::to_string(pillars) +
                             " pillars with the requested clearance");
  }
}

void generate_corridor(const MapGenParams& params, PointCloud& cloud) {
  const Vec3 lo = params.bounds.min;
  const Vec3 hi = params.bounds.max;
  double yc = 0.5 * (lo.y() + hi.y());
  double half = 0.5 * params.corridor_width;
  for (double wall_y : {yc - half, yc + half}) {
    if (wall_y <= lo.y() || wall_y >= hi.y()) continue;
    for (double z = lo.z() + 0.5 * params.spacing; z < hi.z(); z += params.spacing) {
      for (double x = lo.x() + 0.5 * params.spacing; x < hi.x(); x += params.spacing) {
        Vec3 p(x, wall_y, z);
        if (!cleared(params, p)) cloud.points.push_back(p);
      }
    }
  }
}

/// Coarse 26-connected flood fill between the first two clear regions to
/// catch fully blocked parameter choices early.
void check_connectivity(const MapGenParams& params, const PointCloud& cloud) {
  if (params.clear_regions.size() < 2) return;
  double vs = std::max(params.spacing, 0.2);
  Vec3 extent = params.bounds.extent();
  Vec3i dims(std::max(1, static_cast<int>(std::ceil(extent.x() / vs))),
             std::max(1, static_cast<int>(std::ceil(extent.y() / vs))),
             std::max(1, static_cast<int>(std::ceil(extent.z() / vs))));
  VoxelGrid grid(params.bounds.min, vs, dims);
  for (const Vec3& p : cloud.points) grid.mark_inflated_point(p, 0.0);

  Vec3i start = grid.world_to_index(params.clear_regions[0]);
  Vec3i goal = grid.world_to_index(params.clear_regions[1]);
  if (grid.occupied(start) || grid.occupied(goal)) {
    throw std::runtime_error("generate_map: clear region occupied, map parameters too dense");
  }
  std::vector<std::uint8_t> seen(grid.cell_count(), 0);
  std::queue<Vec3i> q;
  q.push(start);
  seen[grid.flat(start)] = 1;
  while (!q.empty()) {
    Vec3i cur = q.front();
    q.pop();
    if (cur == goal) return;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          Vec3i nxt = cur + Vec3i(dx, dy, dz);
          if (!grid.in_bounds(nxt) || grid.occupied(nxt)) continue;
          if (seen[grid.flat(nxt)]) continue;
          seen[grid.flat(nxt)] = 1;
          q.push(nxt);
        }
  }
  throw std::runtime_error("generate_map: map fully blocks the clear regions");
}

}  // namespace

PointCloud generate_map(const MapGenParams& params) {
  if ((params.bounds.extent().array() <= 0.0).any())
    throw std::invalid_argument("generate_map: degenerate bounds");
  if (params.spacing <= 0.0) throw std::invalid_argument("generate_map: spacing must be > 0");

  PointCloud cloud;
  switch (params.kind) {
    case MapKind::perlin_noise: generate_perlin(params, cloud); break;
    case MapKind::random_forest: generate_forest(params, cloud); break;
    case MapKind::corridor: generate_corridor(params, cloud); break;
  }
  check_connectivity(params, cloud);
  return cloud;
}

}  // namespace stitcher
