#include "stitcher/route.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace stitcher {

namespace {

struct Neighbor {
  Vec3i delta;
  double length;  // in voxels
};

const std::vector<Neighbor>& neighbors26() {
  static const std::vector<Neighbor> n = [] {
    std::vector<Neighbor> v;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          v.push_back({Vec3i(dx, dy, dz),
                       std::sqrt(static_cast<double>(dx * dx + dy * dy + dz * dz))});
        }
    return v;
  }();
  return n;
}

/// A diagonal move is allowed only if every sub-move obtained by zeroing a
/// nonempty subset of its components lands on a free voxel (no corner cutting).
bool move_allowed(const VoxelGrid& grid, const Vec3i& from, const Vec3i& delta) {
  Vec3i to = from + delta;
  if (grid.occupied(to)) return false;
  int active[3];
  int n_active = 0;
  for (int k = 0; k < 3; ++k)
    if (delta[k] != 0) active[n_active++] = k;
  if (n_active <= 1) return true;
  for (int mask = 1; mask < (1 << n_active) - 1; ++mask) {
    Vec3i mid = from;
    for (int b = 0; b < n_active; ++b) {
      if (mask & (1 << b)) mid[active[b]] += delta[active[b]];
    }
    if (grid.occupied(mid)) return false;
  }
  return true;
}

struct OpenEntry {
  double f;
  double g;
  std::size_t cell;
};
struct OpenCompare {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;  // prefer deeper nodes on ties
    return a.cell > b.cell;
  }
};

Vec3i require_free_voxel(const World& world, const Vec3& p, const char* what) {
  Vec3i idx = world.grid().world_to_index(p);
  if (!world.grid().in_bounds(idx)) {
    std::ostringstream oss;
    oss << "grid_astar: " << what << " (" << p.transpose() << ") outside grid bounds";
    throw NoPathExists(oss.str());
  }
  if (world.grid().occupied(idx)) {
    std::ostringstream oss;
    oss << "grid_astar: " << what << " (" << p.transpose() << ") maps to an occupied voxel";
    throw NoPathExists(oss.str());
  }
  return idx;
}

Vec3i unflatten(const VoxelGrid& grid, std::size_t flat) {
  int nx = grid.dims().x(), ny = grid.dims().y();
  int x = static_cast<int>(flat % nx);
  int y = static_cast<int>((flat / nx) % ny);
  int z = static_cast<int>(flat / (static_cast<std::size_t>(nx) * ny));
  return Vec3i(x, y, z);
}

template <bool UseHeuristic>
double grid_search(const World& world, const Vec3& start, const Vec3& goal,
                   std::vector<Vec3>* out_path) {
  const VoxelGrid& grid = world.grid();
  Vec3i start_idx = require_free_voxel(world, start, "start");
  Vec3i goal_idx = require_free_voxel(world, goal, "goal");
  const double vs = grid.voxel_size();
  const Vec3 goal_center = grid.index_to_center(goal_idx);

  std::vector<double> g(grid.cell_count(), std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> parent(grid.cell_count(), -1);
  std::vector<std::uint8_t> closed(grid.cell_count(), 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCompare> open;

  std::size_t s = grid.flat(start_idx);
  std::size_t t = grid.flat(goal_idx);
  g[s] = 0.0;
  double h0 = UseHeuristic ? (grid.index_to_center(start_idx) - goal_center).norm() : 0.0;
  open.push({h0, 0.0, s});

  while (!open.empty()) {
    OpenEntry top = open.top();
    open.pop();
    if (closed[top.cell]) continue;
    closed[top.cell] = 1;
    if (top.cell == t) {
      if (out_path) {
        std::vector<Vec3> path;
        std::int64_t cur = static_cast<std::int64_t>(t);
        while (cur >= 0) {
          path.push_back(grid.index_to_center(unflatten(grid, cur)));
          cur = parent[cur];
        }
        std::reverse(path.begin(), path.end());
        *out_path = std::move(path);
      }
      return g[t];
    }
    Vec3i cell = unflatten(grid, top.cell);
    for (const Neighbor& nb : neighbors26()) {
      if (!move_allowed(grid, cell, nb.delta)) continue;
      Vec3i nxt = cell + nb.delta;
      std::size_t nf = grid.flat(nxt);
      if (closed[nf]) continue;
      double ng = g[top.cell] + nb.length * vs;
      if (ng < g[nf]) {
        g[nf] = ng;
        parent[nf] = static_cast<std::int64_t>(top.cell);
        double h = UseHeuristic ? (grid.index_to_center(nxt) - goal_center).norm() : 0.0;
        open.push({ng + h, ng, nf});
      }
    }
  }
  throw NoPathExists("grid_astar: search exhausted OPEN without reaching the goal");
}

}  // namespace

std::vector<Vec3> grid_astar(const World& world, const Vec3& start, const Vec3& goal) {
  std::vector<Vec3> path;
  grid_search<true>(world, start, goal, &path);
  return path;
}

double grid_dijkstra_cost(const World& world, const Vec3& start, const Vec3& goal) {
  return grid_search<false>(world, start, goal, nullptr);
}

bool segment_collision_free(const World& world, const Vec3& a, const Vec3& b) {
  const VoxelGrid& grid = world.grid();
  double len = (b - a).norm();
  double step = grid.voxel_size() / 4.0;
  int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    Vec3 p = a + (b - a) * (static_cast<double>(i) / n);
    if (grid.occupied_point(p)) return false;
  }
  return true;
}

GeometricPath sparsify(const World& world, const std::vector<Vec3>& raw) {
  if (raw.empty()) throw std::invalid_argument("sparsify: raw path is empty");
  GeometricPath out;
  out.raw_path = raw;
  out.waypoints.push_back(raw.front());
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t best = i + 1;
    for (std::size_t j = raw.size() - 1; j > i; --j) {
      if (segment_collision_free(world, raw[i], raw[j])) {
        best = j;
        break;
      }
    }
    out.waypoints.push_back(raw[best]);
    i = best;
  }
  if (out.waypoints.size() < 2) out.waypoints.push_back(raw.back());
  return out;
}

PathFeatures path_features(const GeometricPath& path) {
  const auto& w = path.waypoints;
  const int n = path.waypoint_count();
  if (n < 3) throw std::invalid_argument("path_features: need at least 3 waypoints");
  PathFeatures f;
  f.hyperplane_normals.reserve(n - 2);
  f.headings.reserve(n - 2);
  for (int i = 1; i + 1 < n; ++i) {
    Vec3 din = w[i] - w[i - 1];
    Vec3 dout = w[i + 1] - w[i];
    if (din.norm() < 1e-12 || dout.norm() < 1e-12) {
      throw std::invalid_argument("path_features: coincident consecutive waypoints");
    }
    Vec3 heading = dout.normalized();
    Vec3 bisector = din.normalized() + heading;
    Vec3 normal = bisector.norm() > 1e-9 ? Vec3(bisector.normalized()) : heading;
    f.hyperplane_normals.push_back(normal);
    f.headings.push_back(heading);
  }
  return f;
}

}  // namespace stitcher
