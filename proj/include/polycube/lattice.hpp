#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polycube/geometry.hpp"

namespace polycube {

enum class PolycubeErrorKind {
    Empty,
    Duplicate,
    Disconnected,
    NonManifoldEdge,
    NonManifoldVertex,
    NonZeroGenus,
};

std::string to_string(PolycubeErrorKind kind);

/// Raised by build_polycube when a cube set is not a valid polycube.
/// Only the payload fields relevant to the kind are set.
class PolycubeError : public std::runtime_error {
public:
    PolycubeError(PolycubeErrorKind kind, std::string message);

    PolycubeErrorKind kind() const noexcept { return kind_; }

    std::optional<Point3> point;                        // Duplicate, NonManifoldVertex
    std::optional<std::pair<Point3, Point3>> edge;      // NonManifoldEdge
    std::optional<int> value;                           // Disconnected (components), NonZeroGenus (chi)

private:
    PolycubeErrorKind kind_;
};

/// A validated polycube: face-connected unit cubes whose boundary is a
/// genus-zero 2-manifold. Cubes are kept in lexicographic order.
class Polycube {
public:
    const std::vector<CubeCoord>& cubes() const noexcept { return cubes_; }
    std::size_t size() const noexcept { return cubes_.size(); }
    const std::string& name() const noexcept { return name_; }
    bool contains(const CubeCoord& c) const;
    /// Index of c in cubes(), or -1.
    int index_of(const CubeCoord& c) const;

    /// Named lattice points (e.g. labelled vertices of a catalog shape).
    const std::map<std::string, Point3>& annotations() const noexcept { return annotations_; }
    Polycube with_annotations(std::map<std::string, Point3> annotations) const;
    Polycube with_name(std::string name) const;

    Polycube translated(Point3 offset) const;

private:
    friend Polycube build_polycube(std::vector<CubeCoord> cubes, std::string name);
    Polycube() = default;

    std::vector<CubeCoord> cubes_;
    std::string name_;
    std::map<std::string, Point3> annotations_;
};

/// Validates in the fixed order: empty/duplicates, face-connectivity,
/// manifold edges, manifold vertices, genus. Throws PolycubeError.
Polycube build_polycube(std::vector<CubeCoord> cubes, std::string name = {});

struct DualGraph {
    std::vector<CubeCoord> nodes;            // lexicographic
    std::vector<std::pair<int, int>> edges;  // (i, j), i < j, sorted
};

DualGraph dual_graph(const Polycube& p);
bool is_polycube_tree(const Polycube& p);

/// Parse/format errors of the polycube JSON format. Kept distinct from
/// PolycubeError so callers can tell bad input files from invalid shapes.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads `{"name": ..., "cubes": [[x,y,z], ...], "annotations": {...}}`.
/// Throws FormatError for malformed JSON or non-integer coordinates and
/// PolycubeError for invalid geometry.
Polycube polycube_from_json(const std::string& text);
Polycube load_polycube(const std::string& path);
std::string polycube_to_json(const Polycube& p);

} // namespace polycube
