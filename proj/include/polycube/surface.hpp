#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polycube/geometry.hpp"
#include "polycube/lattice.hpp"

namespace polycube {

/// Shape of the solid along a surface edge, from the number of cubes around it.
enum class EdgeShape { Convex, Flat, Reflex };

std::string to_string(EdgeShape s);

struct SurfaceFace {
    std::array<int, 4> vertices; // CCW seen from outside
    std::array<int, 4> edges;    // edges[i] joins vertices[i] and vertices[(i + 1) % 4]
    CubeCoord cube;
    Direction outward;
};

struct SurfaceEdge {
    std::array<int, 2> vertices; // ascending vertex ids
    std::array<int, 2> faces;    // ascending face ids
    EdgeShape shape;
};

struct SurfaceVertex {
    Point3 point;
    std::vector<int> faces; // ascending
    std::vector<int> edges; // ascending
};

/// Boundary complex of a polycube. Ids are deterministic: vertices by
/// lattice point, edges by endpoint ids, faces by (cube, direction).
class SurfaceModel {
public:
    const std::vector<SurfaceFace>& faces() const noexcept { return faces_; }
    const std::vector<SurfaceVertex>& vertices() const noexcept { return vertices_; }
    const std::vector<SurfaceEdge>& edges() const noexcept { return edges_; }
    const Polycube& polycube() const noexcept { return polycube_; }

    /// -1 when absent.
    int find_vertex(const Point3& p) const;
    int find_edge(int u, int v) const;

    int euler_characteristic() const {
        return static_cast<int>(vertices_.size()) - static_cast<int>(edges_.size()) +
               static_cast<int>(faces_.size());
    }

private:
    friend SurfaceModel extract_surface(const Polycube& p);
    explicit SurfaceModel(Polycube p) : polycube_(std::move(p)) {}

    Polycube polycube_;
    std::vector<SurfaceFace> faces_;
    std::vector<SurfaceEdge> edges_;
    std::vector<SurfaceVertex> vertices_;
};

SurfaceModel extract_surface(const Polycube& p);

enum class VertexClass { Corner, Flat };

std::string to_string(VertexClass c);

struct SkeletonVertex {
    int id;               // surface vertex id; stable across delete_vertices
    Point3 point;
    VertexClass cls;
    int surface_degree;   // degree in the full 1-skeleton
    int quarter_turns;    // total incident face angle in units of 90 degrees
};

/// The 1-skeleton: every surface vertex and unit edge, vertices flagged
/// corner or flat. Local indices (positions in vertices()) are compact;
/// ids refer back to the surface.
class SkeletonGraph {
public:
    SkeletonGraph() = default;
    SkeletonGraph(std::vector<SkeletonVertex> vertices, std::vector<std::pair<int, int>> edges_by_id);

    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    const std::vector<SkeletonVertex>& vertices() const noexcept { return vertices_; }
    const SkeletonVertex& vertex(int local) const { return vertices_[local]; }
    const std::vector<int>& neighbors(int local) const { return adjacency_[local]; }
    int degree(int local) const { return static_cast<int>(adjacency_[local].size()); }
    /// Local index pairs (i < j), sorted.
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    /// Local index of a vertex id, or -1.
    int local_of(int id) const;
    /// Local index of the vertex at p, or -1.
    int local_at(const Point3& p) const;
    bool adjacent(int a, int b) const;

    std::vector<int> corner_locals() const;
    std::vector<int> flat_locals() const;

private:
    std::vector<SkeletonVertex> vertices_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::pair<int, int>> edges_;
};

SkeletonGraph skeleton_graph(const SurfaceModel& s);

class UnknownVertexError : public std::invalid_argument {
public:
    explicit UnknownVertexError(int id);
    int id() const noexcept { return id_; }

private:
    int id_;
};

/// Induced subgraph on the vertices whose ids are not in drop.
SkeletonGraph delete_vertices(const SkeletonGraph& g, const std::set<int>& drop);

/// Debug dumps: `u v` per line (vertex ids), and `id x y z class degree angle`.
std::string skeleton_edge_list(const SkeletonGraph& g);
std::string skeleton_vertex_classes(const SkeletonGraph& g);

} // namespace polycube
