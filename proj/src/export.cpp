#include "polycube/export.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace polycube {

namespace {

const char* stroke(FoldKind k) {
    switch (k) {
        case FoldKind::Cut: return "#00a000";
        case FoldKind::Mountain: return "#e00000";
        case FoldKind::Valley: return "#0000e0";
        case FoldKind::Flat: return "#e0c000";
    }
    return "#000000";
}

char assignment(FoldKind k) {
    switch (k) {
        case FoldKind::Cut: return 'B';
        case FoldKind::Mountain: return 'M';
        case FoldKind::Valley: return 'V';
        case FoldKind::Flat: return 'F';
    }
    return 'U';
}

} // namespace

std::string net_to_svg(const SurfaceModel& s, const NetLayout& net, int unit_px) {
    int min_i = 0, max_i = 0, min_j = 0, max_j = 0;
    for (std::size_t f = 0; f < net.faces.size(); ++f) {
        const auto& c = net.faces[f].cell;
        if (f == 0) {
            min_i = max_i = c.i;
            min_j = max_j = c.j;
        }
        min_i = std::min(min_i, c.i);
        max_i = std::max(max_i, c.i);
        min_j = std::min(min_j, c.j);
        max_j = std::max(max_j, c.j);
    }
    const int margin = 1;
    const int w = (max_i - min_i + 1 + 2 * margin) * unit_px;
    const int h = (max_j - min_j + 1 + 2 * margin) * unit_px;
    // SVG y grows downwards; flip so the net is seen from the outside.
    auto px = [&](int x) { return (x - min_i + margin) * unit_px; };
    auto py = [&](int y) { return (max_j + 1 - y + margin) * unit_px; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
        << ' ' << h << "\">\n";
    for (const auto& p : net.faces)
        out << "  <rect x=\"" << px(p.cell.i) << "\" y=\"" << py(p.cell.j + 1) << "\" width=\"" << unit_px
            << "\" height=\"" << unit_px << "\" fill=\"white\" stroke=\"none\"/>\n";
    // Each segment once; a fold seen from both faces is drawn a single time.
    std::map<std::pair<Point2, Point2>, FoldKind> segments;
    for (std::size_t f = 0; f < net.faces.size(); ++f) {
        for (int e = 0; e < 4; ++e) {
            auto a = net.vertex_image(static_cast<int>(f), e), b = net.vertex_image(static_cast<int>(f), (e + 1) % 4);
            if (b < a) std::swap(a, b);
            const FoldKind k = net.edges[s.faces()[f].edges[e]];
            auto [it, fresh] = segments.emplace(std::make_pair(a, b), k);
            if (!fresh && k == FoldKind::Cut) it->second = k;
        }
    }
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& [seg, k] : segments) {
            if ((k == FoldKind::Cut) != (pass == 1)) continue; // boundary on top
            out << "  <line x1=\"" << px(seg.first.x) << "\" y1=\"" << py(seg.first.y) << "\" x2=\"" << px(seg.second.x)
                << "\" y2=\"" << py(seg.second.y) << "\" stroke=\"" << stroke(k) << "\" stroke-width=\""
                << (k == FoldKind::Cut ? 2 : 1) << "\" stroke-linecap=\"round\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string net_to_fold(const SurfaceModel& s, const NetLayout& net) {
    const int nf = static_cast<int>(net.faces.size());
    // Face corners are glued across every uncut edge.
    std::vector<int> parent(nf * 4);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int f = 0; f < nf; ++f) {
        const auto& face = s.faces()[f];
        for (int e = 0; e < 4; ++e) {
            const int edge = face.edges[e];
            if (net.edges[edge] == FoldKind::Cut) continue;
            const auto& se = s.edges()[edge];
            const int g = se.faces[0] == f ? se.faces[1] : se.faces[0];
            const auto& gv = s.faces()[g].vertices;
            for (int m : {e, (e + 1) % 4}) {
                const int m2 = static_cast<int>(std::find(gv.begin(), gv.end(), face.vertices[m]) - gv.begin());
                unite(f * 4 + m, g * 4 + m2);
            }
        }
    }
    std::map<int, int> index;
    nlohmann::json coords = nlohmann::json::array();
    auto vertex = [&](int f, int m) {
        const int root = find(f * 4 + m);
        auto [it, fresh] = index.emplace(root, static_cast<int>(index.size()));
        if (fresh) {
            const auto p = net.vertex_image(f, m);
            coords.push_back({p.x, p.y});
        }
        return it->second;
    };
    nlohmann::json faces = nlohmann::json::array();
    std::map<std::pair<int, int>, char> edges;
    for (int f = 0; f < nf; ++f) {
        std::array<int, 4> vs{};
        for (int m = 0; m < 4; ++m) vs[m] = vertex(f, m);
        faces.push_back(vs);
        for (int e = 0; e < 4; ++e) {
            const int a = std::min(vs[e], vs[(e + 1) % 4]), b = std::max(vs[e], vs[(e + 1) % 4]);
            edges.emplace(std::make_pair(a, b), assignment(net.edges[s.faces()[f].edges[e]]));
        }
    }
    nlohmann::json ev = nlohmann::json::array(), ea = nlohmann::json::array(), angle = nlohmann::json::array();
    for (const auto& [pair, a] : edges) {
        ev.push_back({pair.first, pair.second});
        ea.push_back(std::string(1, a));
        angle.push_back(a == 'M' ? -90 : a == 'V' ? 90 : 0);
    }
    nlohmann::json fold{
        {"file_spec", 1.1},
        {"file_creator", "polycube"},
        {"file_classes", {"singleModel"}},
        {"frame_title", s.polycube().name()},
        {"frame_classes", {"creasePattern"}},
        {"frame_attributes", {"2D"}},
        {"vertices_coords", coords},
        {"faces_vertices", faces},
        {"edges_vertices", ev},
        {"edges_assignment", ea},
        {"edges_foldAngle", angle},
    };
    return fold.dump(1) + "\n";
}

} // namespace polycube
