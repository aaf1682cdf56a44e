#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace polycube {

/// Integer lattice point. Cubes are named by their minimum corner; surface
/// vertices are lattice points.
struct Point3 {
    int x = 0;
    int y = 0;
    int z = 0;

    constexpr int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    constexpr int& at(int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

    friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr auto operator<=>(const Point3&, const Point3&) = default;
};

using CubeCoord = Point3;
using LatticePoint = Point3;

std::string to_string(const Point3& p);
std::ostream& operator<<(std::ostream& os, const Point3& p);

/// Manhattan distance.
constexpr int l1_distance(Point3 a, Point3 b) {
    auto d = [](int v) { return v < 0 ? -v : v; };
    return d(a.x - b.x) + d(a.y - b.y) + d(a.z - b.z);
}

/// One of the six axis directions. axis in {0,1,2}, positive selects the sign.
struct Direction {
    int axis = 0;
    bool positive = true;

    constexpr Point3 offset() const {
        Point3 p{};
        p.at(axis) = positive ? 1 : -1;
        return p;
    }
    constexpr Direction opposite() const { return {axis, !positive}; }
    constexpr int index() const { return axis * 2 + (positive ? 1 : 0); }
    friend constexpr auto operator<=>(const Direction&, const Direction&) = default;
};

std::string to_string(const Direction& d);

inline constexpr std::array<Direction, 6> kDirections{{
    {0, false}, {0, true}, {1, false}, {1, true}, {2, false}, {2, true},
}};

struct Point3Hash {
    std::size_t operator()(const Point3& p) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(p.x);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(p.y);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(p.z);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

} // namespace polycube
