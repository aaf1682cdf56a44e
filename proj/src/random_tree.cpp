#include "polycube/random_tree.hpp"

#include <algorithm>
#include <set>

namespace polycube {

namespace {

Polycube grow(std::mt19937_64& rng, int n, bool tree, const char* name) {
    std::vector<CubeCoord> cubes{{0, 0, 0}};
    std::set<CubeCoord> present(cubes.begin(), cubes.end());
    for (int tries = 0; static_cast<int>(cubes.size()) < n && tries < 100 * n; ++tries) {
        const auto base = cubes[std::uniform_int_distribution<std::size_t>(0, cubes.size() - 1)(rng)];
        const auto dir = kDirections[std::uniform_int_distribution<int>(0, 5)(rng)];
        const CubeCoord c = base + dir.offset();
        if (present.count(c)) continue;
        const auto touching = std::count_if(kDirections.begin(), kDirections.end(),
                                            [&](const Direction& d) { return present.count(c + d.offset()) > 0; });
        if (touching == 0 || (tree && touching != 1)) continue;
        auto next = cubes;
        next.push_back(c);
        try {
            build_polycube(next);
        } catch (const PolycubeError&) {
            continue;
        }
        cubes = std::move(next);
        present.insert(c);
    }
    return build_polycube(cubes, name);
}

} // namespace

Polycube random_polycube_tree(std::mt19937_64& rng, int n) { return grow(rng, n, true, "random-tree"); }

Polycube random_polycube(std::mt19937_64& rng, int n) { return grow(rng, n, false, "random-polycube"); }

SkeletonGraph lattice_graph(std::vector<Point3> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<SkeletonVertex> vertices;
    for (std::size_t i = 0; i < points.size(); ++i)
        vertices.push_back({static_cast<int>(i), points[i], VertexClass::Corner, 0, 0});
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (const auto& d : kDirections) {
            if (!d.positive) continue;
            auto it = std::lower_bound(points.begin(), points.end(), points[i] + d.offset());
            if (it != points.end() && *it == points[i] + d.offset())
                edges.emplace_back(static_cast<int>(i), static_cast<int>(it - points.begin()));
        }
    for (auto& v : vertices) v.surface_degree = static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const auto& e) {
        return e.first == v.id || e.second == v.id;
    }));
    return SkeletonGraph(std::move(vertices), std::move(edges));
}

SkeletonGraph random_grid_graph(std::mt19937_64& rng, int w, int h, double keep) {
    std::bernoulli_distribution coin(keep);
    std::vector<Point3> points;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y)
            if (coin(rng)) points.push_back({x, y, 0});
    return lattice_graph(std::move(points));
}

} // namespace polycube
