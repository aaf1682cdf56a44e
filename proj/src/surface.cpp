#include "polycube/surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "boundary.hpp"

namespace polycube {

std::string to_string(EdgeShape s) {
    switch (s) {
        case EdgeShape::Convex: return "convex";
        case EdgeShape::Flat: return "flat";
        case EdgeShape::Reflex: return "reflex";
    }
    return "?";
}

std::string to_string(VertexClass c) { return c == VertexClass::Flat ? "flat" : "corner"; }

int SurfaceModel::find_vertex(const Point3& p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p,
                               [](const SurfaceVertex& v, const Point3& q) { return v.point < q; });
    if (it == vertices_.end() || it->point != p) return -1;
    return static_cast<int>(it - vertices_.begin());
}

int SurfaceModel::find_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::array<int, 2>{u, v},
                               [](const SurfaceEdge& e, const std::array<int, 2>& key) { return e.vertices < key; });
    if (it == edges_.end() || it->vertices != std::array<int, 2>{u, v}) return -1;
    return static_cast<int>(it - edges_.begin());
}

SurfaceModel extract_surface(const Polycube& p) {
    SurfaceModel s(p);
    const auto raw = detail::boundary_faces(p.cubes());

    std::vector<Point3> points;
    points.reserve(raw.size() * 4);
    for (const auto& f : raw) points.insert(points.end(), f.corners.begin(), f.corners.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    s.vertices_.reserve(points.size());
    for (const auto& pt : points) s.vertices_.push_back({pt, {}, {}});

    std::vector<std::array<int, 2>> edge_keys;
    for (const auto& f : raw) {
        SurfaceFace face{};
        face.cube = f.cube;
        face.outward = f.dir;
        for (int i = 0; i < 4; ++i) face.vertices[i] = s.find_vertex(f.corners[i]);
        for (int i = 0; i < 4; ++i) {
            int a = face.vertices[i], b = face.vertices[(i + 1) % 4];
            edge_keys.push_back({std::min(a, b), std::max(a, b)});
        }
        s.faces_.push_back(face);
    }
    std::sort(edge_keys.begin(), edge_keys.end());
    edge_keys.erase(std::unique(edge_keys.begin(), edge_keys.end()), edge_keys.end());
    for (const auto& k : edge_keys) s.edges_.push_back({k, {-1, -1}, EdgeShape::Flat});

    for (int fi = 0; fi < static_cast<int>(s.faces_.size()); ++fi) {
        auto& face = s.faces_[fi];
        for (int i = 0; i < 4; ++i) {
            const int e = s.find_edge(face.vertices[i], face.vertices[(i + 1) % 4]);
            face.edges[i] = e;
            auto& slot = s.edges_[e].faces;
            (slot[0] < 0 ? slot[0] : slot[1]) = fi;
            s.vertices_[face.vertices[i]].faces.push_back(fi);
        }
    }
    for (int ei = 0; ei < static_cast<int>(s.edges_.size()); ++ei) {
        auto& e = s.edges_[ei];
        const auto& f0 = s.faces_[e.faces[0]];
        const auto& f1 = s.faces_[e.faces[1]];
        if (f0.outward == f1.outward)
            e.shape = EdgeShape::Flat;
        else if (f0.cube == f1.cube)
            e.shape = EdgeShape::Convex;
        else
            e.shape = EdgeShape::Reflex;
        s.vertices_[e.vertices[0]].edges.push_back(ei);
        s.vertices_[e.vertices[1]].edges.push_back(ei);
    }
    return s;
}

SkeletonGraph::SkeletonGraph(std::vector<SkeletonVertex> vertices, std::vector<std::pair<int, int>> edges_by_id)
    : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {
    for (const auto& [a, b] : edges_by_id) {
        int u = local_of(a), v = local_of(b);
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int SkeletonGraph::local_of(int id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const SkeletonVertex& v, int key) { return v.id < key; });
    if (it == vertices_.end() || it->id != id) return -1;
    return static_cast<int>(it - vertices_.begin());
}

int SkeletonGraph::local_at(const Point3& p) const {
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
        if (vertices_[i].point == p) return i;
    return -1;
}

bool SkeletonGraph::adjacent(int a, int b) const {
    const auto& n = adjacency_[a];
    return std::binary_search(n.begin(), n.end(), b);
}

std::vector<int> SkeletonGraph::corner_locals() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
        if (vertices_[i].cls == VertexClass::Corner) out.push_back(i);
    return out;
}

std::vector<int> SkeletonGraph::flat_locals() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
        if (vertices_[i].cls == VertexClass::Flat) out.push_back(i);
    return out;
}

SkeletonGraph skeleton_graph(const SurfaceModel& s) {
    std::vector<SkeletonVertex> vertices;
    vertices.reserve(s.vertices().size());
    for (int i = 0; i < static_cast<int>(s.vertices().size()); ++i) {
        const auto& v = s.vertices()[i];
        // Every incident unit face contributes one quarter turn.
        const int turns = static_cast<int>(v.faces.size());
        vertices.push_back({i, v.point, turns == 4 ? VertexClass::Flat : VertexClass::Corner,
                            static_cast<int>(v.edges.size()), turns});
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(s.edges().size());
    for (const auto& e : s.edges()) edges.emplace_back(e.vertices[0], e.vertices[1]);
    return SkeletonGraph(std::move(vertices), std::move(edges));
}

UnknownVertexError::UnknownVertexError(int id)
    : std::invalid_argument("unknown skeleton vertex id " + std::to_string(id)), id_(id) {}

SkeletonGraph delete_vertices(const SkeletonGraph& g, const std::set<int>& drop) {
    for (int id : drop)
        if (g.local_of(id) < 0) throw UnknownVertexError(id);
    std::vector<SkeletonVertex> kept;
    for (const auto& v : g.vertices())
        if (!drop.count(v.id)) kept.push_back(v);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges()) {
        const int ia = g.vertex(a).id, ib = g.vertex(b).id;
        if (!drop.count(ia) && !drop.count(ib)) edges.emplace_back(ia, ib);
    }
    return SkeletonGraph(std::move(kept), std::move(edges));
}

std::string skeleton_edge_list(const SkeletonGraph& g) {
    std::ostringstream out;
    for (const auto& [a, b] : g.edges()) out << g.vertex(a).id << ' ' << g.vertex(b).id << '\n';
    return out.str();
}

std::string skeleton_vertex_classes(const SkeletonGraph& g) {
    std::ostringstream out;
    for (const auto& v : g.vertices())
        out << v.id << ' ' << v.point.x << ' ' << v.point.y << ' ' << v.point.z << ' ' << to_string(v.cls) << ' '
            << v.surface_degree << ' ' << v.quarter_turns * 90 << '\n';
    return out.str();
}

} // namespace polycube
