#pragma once

#include <string>

#include "polycube/surface.hpp"
#include "polycube/unfold.hpp"

namespace polycube {

/// Net drawn outside-up: white cells, cut boundary green, mountain folds
/// red, valley folds blue, flat creases yellow.
std::string net_to_svg(const SurfaceModel& s, const NetLayout& net, int unit_px = 24);

/// FOLD crease pattern: vertices_coords, faces_vertices, edges_vertices and
/// edges_assignment (B, M, V, F). Points shared only by touching boundary
/// stay separate vertices.
std::string net_to_fold(const SurfaceModel& s, const NetLayout& net);

} // namespace polycube
