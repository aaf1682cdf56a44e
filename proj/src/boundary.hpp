#pragma once

// Boundary-face enumeration shared by validation and surface extraction.

#include <array>
#include <algorithm>
#include <vector>

#include "polycube/geometry.hpp"

namespace polycube::detail {

struct RawFace {
    CubeCoord cube;
    Direction dir;
    std::array<Point3, 4> corners; // CCW seen from outside
};

inline bool sorted_contains(const std::vector<CubeCoord>& sorted, const CubeCoord& c) {
    return std::binary_search(sorted.begin(), sorted.end(), c);
}

inline std::array<Point3, 4> face_corners(const CubeCoord& cube, Direction dir) {
    Point3 base = cube;
    if (dir.positive) base.at(dir.axis) += 1;
    Point3 eu{}, ev{};
    eu.at((dir.axis + 1) % 3) = 1;
    ev.at((dir.axis + 2) % 3) = 1;
    if (dir.positive) return {base, base + eu, base + eu + ev, base + ev};
    return {base, base + ev, base + eu + ev, base + eu};
}

/// Unit faces with no cube across them, ordered by (cube, direction index).
inline std::vector<RawFace> boundary_faces(const std::vector<CubeCoord>& sorted_cubes) {
    std::vector<RawFace> out;
    for (const auto& c : sorted_cubes) {
        for (const auto& d : kDirections) {
            if (sorted_contains(sorted_cubes, c + d.offset())) continue;
            out.push_back({c, d, face_corners(c, d)});
        }
    }
    return out;
}

} // namespace polycube::detail
