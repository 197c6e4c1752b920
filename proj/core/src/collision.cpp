#include "stitcher/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stitcher {

namespace {
// Distances at or below this margin count as collision; keeps the sampling
// loop from stalling on tangent approaches and only errs conservative.
constexpr double kContactMargin = 1e-6;
constexpr double kMinSpeed = 1e-6;
}  // namespace

double segment_speed_bound(const PolySegment& seg) {
  if (seg.duration <= 0.0) return 0.0;
  double sq = 0.0;
  for (int a = 0; a < 3; ++a) {
    double m = poly_max_abs_on_interval(poly_derivative(seg.axis_coeffs[a]), 0.0, seg.duration);
    sq += m * m;
  }
  return std::sqrt(sq);
}

namespace {

bool check_impl(const World& world, const PolySegment& seg, SafeSphereSet* cache,
                bool use_cache, double speed_bound, CollisionCounters* counters) {
  const double T = seg.duration;
  const double v = std::max(speed_bound, kMinSpeed);
  const double radius_cap = std::max(world.bounds().diagonal(), 1.0);

  double tau = 0.0;
  while (tau <= T) {
    Vec3 r = seg.eval(tau, 0);

    if (use_cache && cache) {
      // Alg. 2 lines 9-15: among spheres containing the sample, take the one
      // with the smallest center distance; d_min resets every iteration.
      double d_min = std::numeric_limits<double>::infinity();
      int k = -1;
      for (std::size_t i = 0; i < cache->spheres.size(); ++i) {
        double d = (r - cache->spheres[i].center).norm();
        if (d < cache->spheres[i].radius && d <= d_min) {
          d_min = d;
          k = static_cast<int>(i);
        }
      }
      if (k >= 0) {
        double step = (cache->spheres[k].radius - d_min) / v;
        // A sample at the sphere boundary yields no progress; fall through to
        // a map query there so the verdict stays identical to the uncached
        // checker.
        if (step * v > kContactMargin) {
          if (counters) counters->cache_hits++;
          tau += step;
          continue;
        }
      }
    }

    if (counters) counters->map_queries++;
    double d = world.nearest_obstacle_distance(r);
    if (d <= kContactMargin) return true;
    d = std::min(d, radius_cap);
    if (cache) {
      cache->spheres.push_back({r, d});
      if (counters) counters->spheres_created++;
    }
    tau += d / v;
  }
  return false;
}

}  // namespace

bool collision_check_map(const World& world, const PolySegment& seg, double speed_bound,
                         SafeSphereSet* spheres, CollisionCounters* counters) {
  return check_impl(world, seg, spheres, /*use_cache=*/false, speed_bound, counters);
}

bool collision_check_cached(const World& world, const PolySegment& seg,
                            SafeSphereSet& cache, double speed_bound,
                            CollisionCounters* counters) {
  return check_impl(world, seg, &cache, /*use_cache=*/true, speed_bound, counters);
}

}  // namespace stitcher
