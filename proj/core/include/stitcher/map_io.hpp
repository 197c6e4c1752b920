#pragma once

#include "stitcher/types.hpp"
#include "stitcher/world.hpp"

#include <string>

namespace stitcher {

/// Line-oriented map file:
///   stitcher-map v1 <voxel_size> <xmin ymin zmin xmax ymax zmax> <vehicle_radius>
///   x y z            (one point per line, meters)
struct MapFile {
  PointCloud cloud;
  double voxel_size = 0.2;
  double vehicle_radius = 0.25;
  Aabb bounds;
};

MapFile load_map(const std::string& path);
void save_map(const std::string& path, const MapFile& map);

World world_from_map(const MapFile& map);

}  // namespace stitcher
