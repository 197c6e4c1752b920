#include "stitcher/map_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stitcher {

MapFile load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_map: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_map: empty file " + path);

  std::istringstream header(line);
  std::string magic, version;
  MapFile map;
  header >> magic >> version >> map.voxel_size >> map.bounds.min.x() >> map.bounds.min.y() >>
      map.bounds.min.z() >> map.bounds.max.x() >> map.bounds.max.y() >> map.bounds.max.z() >>
      map.vehicle_radius;
  if (!header || magic != "stitcher-map" || version != "v1") {
    throw std::runtime_error("load_map: bad header in " + path);
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Vec3 p;
    ls >> p.x() >> p.y() >> p.z();
    if (!ls) {
      throw std::runtime_error("load_map: bad point at line " + std::to_string(line_no));
    }
    map.cloud.points.push_back(p);
  }
  return map;
}

void save_map(const std::string& path, const MapFile& map) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_map: cannot open " + path);
  out.precision(17);
  out << "stitcher-map v1 " << map.voxel_size << ' ' << map.bounds.min.x() << ' '
      << map.bounds.min.y() << ' ' << map.bounds.min.z() << ' ' << map.bounds.max.x() << ' '
      << map.bounds.max.y() << ' ' << map.bounds.max.z() << ' ' << map.vehicle_radius << '\n';
  for (const Vec3& p : map.cloud.points) {
    out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
}

World world_from_map(const MapFile& map) {
  return build_world(map.cloud, map.voxel_size, map.vehicle_radius, map.bounds);
}

}  // namespace stitcher
