#include "polycube/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "boundary.hpp"

namespace polycube {

std::string to_string(const Point3& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")";
}

std::ostream& operator<<(std::ostream& os, const Point3& p) { return os << to_string(p); }

std::string to_string(const Direction& d) {
    static const char* axes = "xyz";
    return std::string(d.positive ? "+" : "-") + axes[d.axis];
}

std::string to_string(PolycubeErrorKind kind) {
    switch (kind) {
        case PolycubeErrorKind::Empty: return "Empty";
        case PolycubeErrorKind::Duplicate: return "Duplicate";
        case PolycubeErrorKind::Disconnected: return "Disconnected";
        case PolycubeErrorKind::NonManifoldEdge: return "NonManifoldEdge";
        case PolycubeErrorKind::NonManifoldVertex: return "NonManifoldVertex";
        case PolycubeErrorKind::NonZeroGenus: return "NonZeroGenus";
    }
    return "Unknown";
}

PolycubeError::PolycubeError(PolycubeErrorKind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

bool Polycube::contains(const CubeCoord& c) const { return detail::sorted_contains(cubes_, c); }

int Polycube::index_of(const CubeCoord& c) const {
    auto it = std::lower_bound(cubes_.begin(), cubes_.end(), c);
    if (it == cubes_.end() || *it != c) return -1;
    return static_cast<int>(it - cubes_.begin());
}

Polycube Polycube::with_annotations(std::map<std::string, Point3> annotations) const {
    Polycube copy = *this;
    copy.annotations_ = std::move(annotations);
    return copy;
}

Polycube Polycube::with_name(std::string name) const {
    Polycube copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

Polycube Polycube::translated(Point3 offset) const {
    Polycube copy = *this;
    for (auto& c : copy.cubes_) c = c + offset;
    for (auto& [label, p] : copy.annotations_) p = p + offset;
    return copy;
}

namespace {

// Components under any contact (face, edge or vertex). Cubes that touch only
// along an edge or at a vertex are left for the manifold checks to report.
int count_components(const std::vector<CubeCoord>& sorted) {
    std::vector<char> seen(sorted.size(), 0);
    int components = 0;
    for (std::size_t s = 0; s < sorted.size(); ++s) {
        if (seen[s]) continue;
        ++components;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            auto i = q.front();
            q.pop();
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dz = -1; dz <= 1; ++dz) {
                        const Point3 n = sorted[i] + Point3{dx, dy, dz};
                        auto it = std::lower_bound(sorted.begin(), sorted.end(), n);
                        if (it == sorted.end() || *it != n) continue;
                        auto j = static_cast<std::size_t>(it - sorted.begin());
                        if (!seen[j]) {
                            seen[j] = 1;
                            q.push(j);
                        }
                    }
        }
    }
    return components;
}

using EdgeKey = std::pair<Point3, Point3>;

EdgeKey edge_key(Point3 a, Point3 b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

} // namespace

Polycube build_polycube(std::vector<CubeCoord> cubes, std::string name) {
    if (cubes.empty()) throw PolycubeError(PolycubeErrorKind::Empty, "polycube has no cubes");
    std::sort(cubes.begin(), cubes.end());
    if (auto it = std::adjacent_find(cubes.begin(), cubes.end()); it != cubes.end()) {
        PolycubeError err(PolycubeErrorKind::Duplicate, "duplicate cube " + to_string(*it));
        err.point = *it;
        throw err;
    }

    if (int comps = count_components(cubes); comps != 1) {
        PolycubeError err(PolycubeErrorKind::Disconnected,
                          "cubes form " + std::to_string(comps) + " separate components");
        err.value = comps;
        throw err;
    }

    const auto faces = detail::boundary_faces(cubes);

    std::map<EdgeKey, int> edge_faces;
    for (const auto& f : faces)
        for (int i = 0; i < 4; ++i) ++edge_faces[edge_key(f.corners[i], f.corners[(i + 1) % 4])];
    for (const auto& [e, count] : edge_faces) {
        if (count != 2) {
            PolycubeError err(PolycubeErrorKind::NonManifoldEdge,
                              "edge " + to_string(e.first) + "-" + to_string(e.second) + " bounds " +
                                  std::to_string(count) + " faces");
            err.edge = e;
            throw err;
        }
    }

    // Fan check: at each vertex the incident faces, linked through the
    // incident edges, must form one closed cycle.
    std::map<Point3, std::vector<int>> vertex_faces;
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi)
        for (const auto& p : faces[fi].corners) vertex_faces[p].push_back(fi);
    for (const auto& [v, incident] : vertex_faces) {
        std::map<Point3, std::vector<int>> by_edge; // other endpoint -> faces
        for (int fi : incident) {
            const auto& c = faces[fi].corners;
            int k = static_cast<int>(std::find(c.begin(), c.end(), v) - c.begin());
            by_edge[c[(k + 1) % 4]].push_back(fi);
            by_edge[c[(k + 3) % 4]].push_back(fi);
        }
        std::map<int, std::vector<int>> adj;
        for (const auto& [w, fs] : by_edge) {
            adj[fs[0]].push_back(fs[1]);
            adj[fs[1]].push_back(fs[0]);
        }
        std::vector<int> stack{incident.front()};
        std::vector<int> seen{incident.front()};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int g : adj[f]) {
                if (std::find(seen.begin(), seen.end(), g) == seen.end()) {
                    seen.push_back(g);
                    stack.push_back(g);
                }
            }
        }
        if (seen.size() != incident.size()) {
            PolycubeError err(PolycubeErrorKind::NonManifoldVertex,
                              "faces around vertex " + to_string(v) + " do not form a single fan");
            err.point = v;
            throw err;
        }
    }

    const auto V = static_cast<long>(vertex_faces.size());
    const auto E = static_cast<long>(edge_faces.size());
    const auto F = static_cast<long>(faces.size());
    if (const long chi = V - E + F; chi != 2) {
        PolycubeError err(PolycubeErrorKind::NonZeroGenus,
                          "surface Euler characteristic is " + std::to_string(chi) + ", expected 2");
        err.value = static_cast<int>(chi);
        throw err;
    }

    Polycube p;
    p.cubes_ = std::move(cubes);
    p.name_ = std::move(name);
    return p;
}

DualGraph dual_graph(const Polycube& p) {
    DualGraph g;
    g.nodes = p.cubes();
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
        for (int axis = 0; axis < 3; ++axis) {
            const int j = p.index_of(g.nodes[i] + Direction{axis, true}.offset());
            if (j >= 0) g.edges.emplace_back(i, j);
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool is_polycube_tree(const Polycube& p) { return dual_graph(p).edges.size() + 1 == p.size(); }

namespace {

Point3 point_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) throw FormatError(what + ": expected [x, y, z]");
    Point3 p;
    for (int a = 0; a < 3; ++a) {
        if (!j[a].is_number_integer()) throw FormatError(what + ": coordinates must be integers");
        p.at(a) = j[a].get<int>();
    }
    return p;
}

} // namespace

Polycube polycube_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cubes") || !doc["cubes"].is_array())
        throw FormatError("expected an object with a \"cubes\" array");
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw FormatError("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    std::vector<CubeCoord> cubes;
    for (const auto& c : doc["cubes"]) cubes.push_back(point_from_json(c, "cube"));
    std::map<std::string, Point3> annotations;
    if (doc.contains("annotations")) {
        if (!doc["annotations"].is_object()) throw FormatError("\"annotations\" must be an object");
        for (const auto& [label, value] : doc["annotations"].items())
            annotations[label] = point_from_json(value, "annotation " + label);
    }
    return build_polycube(std::move(cubes), std::move(name)).with_annotations(std::move(annotations));
}

Polycube load_polycube(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return polycube_from_json(ss.str());
}

std::string polycube_to_json(const Polycube& p) {
    nlohmann::json doc;
    doc["name"] = p.name();
    doc["cubes"] = nlohmann::json::array();
    for (const auto& c : p.cubes()) doc["cubes"].push_back({c.x, c.y, c.z});
    if (!p.annotations().empty()) {
        doc["annotations"] = nlohmann::json::object();
        for (const auto& [label, pt] : p.annotations()) doc["annotations"][label] = {pt.x, pt.y, pt.z};
    }
    return doc.dump();
}

} // namespace polycube
