#pragma once

#include <random>

#include "polycube/lattice.hpp"
#include "polycube/surface.hpp"

namespace polycube {

/// Grows a random polycube tree of n cubes from the origin. Each step
/// attaches a cube by exactly one face and keeps it only if the result is
/// still a valid polycube; gives up growing after many rejected tries, so
/// the result may be smaller than n in pathological cases.
Polycube random_polycube_tree(std::mt19937_64& rng, int n);

/// Like random_polycube_tree, but cubes may touch several existing cubes.
Polycube random_polycube(std::mt19937_64& rng, int n);

/// Unit-distance graph on the given lattice points, all marked corner.
/// Ids follow the order of the sorted points.
SkeletonGraph lattice_graph(std::vector<Point3> points);

/// Induced subgraph of a w x h grid in the z = 0 plane, each point kept
/// with probability keep; may be disconnected.
SkeletonGraph random_grid_graph(std::mt19937_64& rng, int w, int h, double keep);

} // namespace polycube
