#include "stitcher/velocity_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace stitcher {

namespace {

/// Unit vector orthogonal to a, deterministic: Gram-Schmidt against the
/// coordinate axis least aligned with a.
Vec3 any_orthogonal(const Vec3& a) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a[i]) < std::abs(a[k])) k = i;
  Vec3 e = Vec3::Zero();
  e[k] = 1.0;
  return (e - a.dot(e) * a).normalized();
}

}  // namespace

VelocitySampleSet build_velocity_set(const PathFeatures& features, double v_max,
                                     int n_speeds, double cone_half_angle_deg) {
  if (n_speeds < 1) throw std::invalid_argument("build_velocity_set: n_speeds must be >= 1");
  if (!(v_max > 0.0)) throw std::invalid_argument("build_velocity_set: v_max must be > 0");

  VelocitySampleSet out;
  out.magnitudes.resize(n_speeds);
  if (n_speeds == 1) {
    out.magnitudes[0] = 0.0;
  } else {
    for (int i = 0; i < n_speeds; ++i) {
      out.magnitudes[i] = v_max * static_cast<double>(i) / (n_speeds - 1);
    }
  }

  const double half = deg2rad(cone_half_angle_deg) / 2.0;
  out.directions.resize(features.hyperplane_normals.size());
  for (std::size_t i = 0; i < features.hyperplane_normals.size(); ++i) {
    const Vec3& normal = features.hyperplane_normals[i];
    const Vec3& heading = features.headings[i];
    Vec3 in_plane = heading - heading.dot(normal) * normal;
    Vec3 ortho = in_plane.norm() > 1e-9 ? Vec3(in_plane.normalized()) : any_orthogonal(normal);
    out.directions[i] = {normal, (std::cos(half) * normal + std::sin(half) * ortho).normalized(),
                         (std::cos(half) * normal - std::sin(half) * ortho).normalized()};
  }
  return out;
}

std::vector<std::vector<Vec3>> sample_velocity_lists(const VelocitySampleSet& samples,
                                                     int n_interior) {
  if (n_interior > static_cast<int>(samples.directions.size())) {
    throw std::invalid_argument("sample_velocity_lists: sample set missing directions");
  }
  std::vector<std::vector<Vec3>> velocities(std::max(0, n_interior));
  for (int i = 0; i < n_interior; ++i) {
    std::vector<Vec3> list;
    for (double m : samples.magnitudes) {
      if (m <= 1e-12) {
        list.push_back(Vec3::Zero());  // speed zero: one node, direction meaningless
        continue;
      }
      for (const Vec3& d : samples.directions[i]) list.push_back(m * d);
    }
    // Drop exact duplicates (e.g. repeated zero speed or degenerate cones).
    auto& dedup = velocities[i];
    for (const Vec3& v : list) {
      bool seen = false;
      for (const Vec3& u : dedup)
        if ((u - v).norm() <= 1e-12) seen = true;
      if (!seen) dedup.push_back(v);
    }
  }
  return velocities;
}

VelocityGraph build_velocity_graph(const GeometricPath& path,
                                   const VelocitySampleSet& samples,
                                   const Vec3& start_velocity, double u_max) {
  const int n = path.waypoint_count();
  return build_velocity_graph_explicit(path, sample_velocity_lists(samples, n - 2),
                                       start_velocity, u_max);
}

VelocityGraph build_velocity_graph_explicit(const GeometricPath& path,
                                            const std::vector<std::vector<Vec3>>& velocities,
                                            const Vec3& start_velocity, double u_max) {
  const int n = path.waypoint_count();
  if (n < 2) throw std::invalid_argument("build_velocity_graph: need N >= 2 waypoints");
  if (static_cast<int>(velocities.size()) != n - 2) {
    throw std::invalid_argument("build_velocity_graph: need one velocity list per interior waypoint");
  }
  VelocityGraph g;
  g.n_waypoints = n;
  g.samples_per_layer = n > 2 ? static_cast<int>(velocities[0].size()) : 0;
  for (const auto& list : velocities) {
    if (static_cast<int>(list.size()) != g.samples_per_layer) {
      throw std::invalid_argument("build_velocity_graph: velocity lists must share one size M");
    }
  }
  if (n > 2 && g.samples_per_layer < 1) {
    throw std::invalid_argument("build_velocity_graph: M must be >= 1");
  }

  g.start_node = 0;
  g.nodes.push_back({0, 0, start_velocity});
  for (int layer = 1; layer <= n - 2; ++layer) {
    for (const Vec3& v : velocities[layer - 1]) {
      g.nodes.push_back({layer, layer, v});
    }
  }
  g.goal_node = static_cast<int>(g.nodes.size());
  g.nodes.push_back({n - 1, n - 1, Vec3::Zero()});

  auto node_range = [&](int layer) -> std::pair<int, int> {
    if (layer == 0) return {0, 1};
    if (layer == n - 1) return {g.goal_node, g.goal_node + 1};
    int first = 1 + (layer - 1) * g.samples_per_layer;
    return {first, first + g.samples_per_layer};
  };

  g.out_edges.resize(g.nodes.size());
  for (int layer = 0; layer + 1 <= n - 1; ++layer) {
    auto [a0, a1] = node_range(layer);
    auto [b0, b1] = node_range(layer + 1);
    for (int a = a0; a < a1; ++a) {
      for (int b = b0; b < b1; ++b) {
        const Vec3& wa = path.waypoints[g.nodes[a].waypoint];
        const Vec3& wb = path.waypoints[g.nodes[b].waypoint];
        SyncProfile3D prof =
            min_time_3d(wa, g.nodes[a].velocity, wb, g.nodes[b].velocity, u_max);
        int id = static_cast<int>(g.edges.size());
        g.edges.push_back({a, b, prof.duration});
        g.out_edges[a].push_back(id);
      }
    }
  }
  return g;
}

CostToGo dp_cost_to_go(const VelocityGraph& graph) {
  CostToGo ctg;
  const std::size_t n = graph.nodes.size();
  ctg.optimal.assign(n, std::numeric_limits<double>::infinity());
  ctg.ranked.assign(n, {});
  ctg.optimal[graph.goal_node] = 0.0;

  // Nodes are stored in layer order; one backward sweep suffices.
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    if (graph.out_edges[i].empty()) continue;
    auto& ranked = ctg.ranked[i];
    ranked.reserve(graph.out_edges[i].size());
    for (int e : graph.out_edges[i]) {
      double v = graph.edges[e].min_time + ctg.optimal[graph.edges[e].to];
      ranked.emplace_back(e, v);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) {
                return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    ctg.optimal[i] = ranked.front().second;
  }
  return ctg;
}

void dump_velocity_graph_csv(const VelocityGraph& graph, const CostToGo& ctg,
                             const std::string& nodes_path, const std::string& edges_path) {
  std::ofstream nodes(nodes_path);
  nodes << "layer,wp,vx,vy,vz,V*\n";
  nodes.precision(12);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    nodes << n.layer << ',' << n.waypoint << ',' << n.velocity.x() << ',' << n.velocity.y()
          << ',' << n.velocity.z() << ',' << ctg.optimal[i] << '\n';
  }
  std::ofstream edges(edges_path);
  edges << "from,to,T_d\n";
  edges.precision(12);
  for (const auto& e : graph.edges) {
    edges << e.from << ',' << e.to << ',' << e.min_time << '\n';
  }
}

}  // namespace stitcher
