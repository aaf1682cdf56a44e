#include "polycube/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "polycube/parity.hpp"
#include "polycube/surface.hpp"

namespace polycube {

namespace detail {
const std::map<std::string, std::string>& catalog_sources();
}

UnknownShapeError::UnknownShapeError(const std::string& name) : std::invalid_argument("unknown shape: " + name) {}

InvariantViolation::InvariantViolation(std::string shape, std::string check)
    : std::runtime_error("catalog shape " + shape + " fails check: " + check),
      shape_(std::move(shape)),
      check_(std::move(check)) {}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct Facts {
    std::size_t cubes;
    std::size_t vertices;
    std::size_t flats;
    int imbalance;
    bool tree;
    SkeletonGraph g;
};

Facts facts(const Polycube& p) {
    auto g = skeleton_graph(extract_surface(p));
    return {p.size(), g.size(), g.flat_locals().size(), parity_report(g).imbalance, is_polycube_tree(p), std::move(g)};
}

void require(bool ok, const std::string& shape, const std::string& check) {
    if (!ok) throw InvariantViolation(shape, check);
}

/// A corner whose skeleton neighbours are exactly the flat vertices.
bool has_corner_fed_by_flats(const SkeletonGraph& g, const std::vector<int>& flats) {
    std::vector<int> sorted_flats(flats);
    std::sort(sorted_flats.begin(), sorted_flats.end());
    for (int v : g.corner_locals()) {
        auto nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end());
        if (nb == sorted_flats) return true;
    }
    return false;
}

void gate(const std::string& key, const Polycube& p) {
    const auto f = facts(p);
    const auto& name = p.name();
    if (key == "cube") {
        require(f.cubes == 1 && f.vertices == 8 && f.flats == 0, name, "one cube with 8 corner vertices");
    } else if (key == "domino") {
        require(f.cubes == 2 && f.flats == 4, name, "two cubes with 4 flat vertices");
    } else if (key == "p6") {
        require(f.flats == 0, name, "all vertices are corners");
        require(f.tree, name, "dual graph is a tree");
    } else if (key == "p6minus") {
        require(f.cubes == 6 && f.tree, name, "6-cube polycube tree");
        require(f.flats == 0, name, "all vertices are corners");
    } else if (key == "p222") {
        require(f.cubes == 8 && f.vertices == 26, name, "8 cubes and 26 surface vertices");
        require(f.imbalance == 2, name, "parity imbalance 2");
    } else if (key == "pplus") {
        require(f.cubes == 6 && f.tree, name, "6-cube polycube tree");
    } else if (key == "p14") {
        require(f.cubes == 14, name, "14 cubes");
        require(f.flats == 3, name, "exactly 3 flat vertices");
        require(f.imbalance == 2, name, "parity imbalance 2");
        require(has_corner_fed_by_flats(f.g, f.g.flat_locals()), name, "a corner adjacent to exactly the 3 flat vertices");
    } else if (key == "p44") {
        require(f.cubes == 44, name, "44 cubes");
        require(f.flats == 0, name, "no flat vertices");
        require(f.imbalance == 2, name, "parity imbalance 2");
    }
}

Polycube load_entry(const std::string& key) {
    const auto& sources = detail::catalog_sources();
    auto it = sources.find(key);
    if (it == sources.end()) throw UnknownShapeError(key);
    Polycube p = [&] {
        try {
            return polycube_from_json(it->second);
        } catch (const std::exception& e) {
            throw InvariantViolation(key, std::string("valid polycube (") + e.what() + ")");
        }
    }();
    gate(key, p);
    return p;
}

const Polycube& cached(const std::string& key) {
    // Entries are immutable once loaded and gated.
    static const std::map<std::string, Polycube> entries = [] {
        std::map<std::string, Polycube> m;
        for (const auto& [k, src] : detail::catalog_sources()) m.emplace(k, load_entry(k));
        return m;
    }();
    auto it = entries.find(key);
    if (it == entries.end()) throw UnknownShapeError(key);
    return it->second;
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"Cube", "Domino", "P6", "P6minus", "P222", "Pplus", "P14", "P44", "P44tower"};
}

Polycube p44_tower(int k) {
    const std::string name = "P44tower(" + std::to_string(k) + ")";
    if (k < 1) throw std::invalid_argument("tower height must be at least 1");
    const Polycube& base = cached("p44");
    const Polycube& unit = cached("p6minus");

    auto top_of = [](const std::vector<CubeCoord>& cubes) {
        return *std::max_element(cubes.begin(), cubes.end(), [](const Point3& a, const Point3& b) {
            return std::tie(a.z, a.x, a.y) < std::tie(b.z, b.x, b.y);
        });
    };
    // The copy's centre is the cube directly below its top cube.
    const CubeCoord unit_top = top_of(unit.cubes());
    const CubeCoord unit_center = unit_top - Point3{0, 0, 1};

    std::vector<CubeCoord> cubes = base.cubes();
    CubeCoord support = top_of(cubes);
    for (int i = 0; i < k; ++i) {
        const Point3 offset = support + Point3{0, 0, 1} - unit_center;
        for (const auto& c : unit.cubes()) cubes.push_back(c + offset);
        support = unit_top + offset;
    }
    Polycube p = [&] {
        try {
            return build_polycube(cubes, name).with_annotations(base.annotations());
        } catch (const PolycubeError& e) {
            throw InvariantViolation(name, std::string("valid polycube (") + e.what() + ")");
        }
    }();
    const auto f = facts(p);
    require(f.cubes == 44 + 6 * static_cast<std::size_t>(k), name, "44 + 6k cubes");
    require(f.imbalance == 2, name, "parity imbalance 2");
    require(f.flats == 0, name, "no flat vertices");
    return p;
}

Polycube catalog(const std::string& name, std::optional<int> k) {
    static const std::regex tower_arg(R"(p44tower\s*[\(:]\s*(-?\d+)\s*\)?)");
    const std::string key = lower(name);
    std::smatch m;
    if (std::regex_match(key, m, tower_arg)) return p44_tower(std::stoi(m[1]));
    if (key == "p44tower") {
        if (!k) throw std::invalid_argument("P44tower needs a height k");
        return p44_tower(*k);
    }
    if (key == "p'6" || key == "p6'") return cached("p6minus");
    if (key == "p+") return cached("pplus");
    return cached(key);
}

} // namespace polycube
