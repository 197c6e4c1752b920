#pragma once

#include "stitcher/lqmt.hpp"
#include "stitcher/types.hpp"
#include "stitcher/world.hpp"

#include <vector>

namespace stitcher {

struct SafeSphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// Obstacle-free spheres recorded during collision checks, keyed by waypoint
/// pair in the search context and append-only within one search.
struct SafeSphereSet {
  std::vector<SafeSphere> spheres;
};

struct CollisionCounters {
  long map_queries = 0;
  long cache_hits = 0;
  long spheres_created = 0;
};

/// Certified upper bound on the segment speed from the exact per-axis
/// velocity-polynomial extrema. Sound even when the segment exceeds the
/// global speed limit.
double segment_speed_bound(const PolySegment& seg);

/// Time-of-collision-driven sampling: query the nearest obstacle distance d
/// at the current sample, declare collision when d is non-positive, otherwise
/// record the free sphere and advance time by d / speed_bound. Infinite
/// distances are capped at the world-bounds diagonal. Returns true on
/// collision; discovered spheres are appended to `spheres` when non-null.
bool collision_check_map(const World& world, const PolySegment& seg, double speed_bound,
                         SafeSphereSet* spheres, CollisionCounters* counters);

/// Cached variant: while the sample lies inside a cached sphere (choosing the
/// containing sphere with the smallest center distance), advance by
/// (R_k - d_k) / speed_bound without a map query; otherwise fall back to a
/// map query and extend the cache.
bool collision_check_cached(const World& world, const PolySegment& seg,
                            SafeSphereSet& cache, double speed_bound,
                            CollisionCounters* counters);

}  // namespace stitcher
