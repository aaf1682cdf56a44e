#include <gtest/gtest.h>

#include <json.hpp>
#include <map>
#include <set>

#include "polycube/catalog.hpp"
#include "polycube/export.hpp"
#include "polycube/unfold.hpp"

using namespace polycube;

namespace {

SearchConfig quick(std::uint64_t seed = 0) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.time_budget = std::chrono::seconds(60);
    return cfg;
}

std::pair<int, int> edge_at(const SurfaceModel& s, Point3 a, Point3 b) {
    const int u = s.find_vertex(a);
    const int v = s.find_vertex(b);
    EXPECT_GE(s.find_edge(u, v), 0) << to_string(a) << to_string(b);
    return {u, v};
}

/// Bottom face with its four sides, lid hinged on the +x side.
CutTree cross_cut(const SurfaceModel& s) {
    std::vector<std::pair<int, int>> e;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) e.push_back(edge_at(s, {x, y, 0}, {x, y, 1}));
    e.push_back(edge_at(s, {0, 0, 1}, {0, 1, 1}));
    e.push_back(edge_at(s, {0, 0, 1}, {1, 0, 1}));
    e.push_back(edge_at(s, {0, 1, 1}, {1, 1, 1}));
    return CutTree(e);
}

std::map<FoldKind, int> tally(const NetLayout& net) {
    std::map<FoldKind, int> out;
    for (auto k : net.edges) ++out[k];
    return out;
}

/// Layout invariants every developed net must satisfy.
void expect_consistent(const SurfaceModel& s, const CutTree& cut, const NetLayout& net) {
    ASSERT_EQ(net.faces.size(), s.faces().size());
    for (std::size_t f = 0; f < s.faces().size(); ++f) {
        const auto& pl = net.faces[f];
        EXPECT_FALSE(pl.frame.mirrored);
        std::set<Point2> images, corners;
        for (int m = 0; m < 4; ++m) {
            images.insert(net.vertex_image(static_cast<int>(f), m));
            corners.insert(cell_corner(pl.cell, m));
        }
        EXPECT_EQ(images, corners);
    }
    for (std::size_t e = 0; e < s.edges().size(); ++e) {
        const auto& se = s.edges()[e];
        const bool is_cut = cut.contains(se.vertices[0], se.vertices[1]);
        EXPECT_EQ(net.edges[e] == FoldKind::Cut, is_cut);
        if (is_cut) continue;
        switch (se.shape) {
        case EdgeShape::Convex: EXPECT_EQ(net.edges[e], FoldKind::Mountain); break;
        case EdgeShape::Reflex: EXPECT_EQ(net.edges[e], FoldKind::Valley); break;
        case EdgeShape::Flat: EXPECT_EQ(net.edges[e], FoldKind::Flat); break;
        }
        // Both faces put the shared vertices on the same points.
        for (int v : se.vertices) {
            std::set<Point2> pts;
            for (int f : se.faces) {
                const auto& fv = s.faces()[f].vertices;
                const int m = static_cast<int>(std::find(fv.begin(), fv.end(), v) - fv.begin());
                pts.insert(net.vertex_image(f, m));
            }
            EXPECT_EQ(pts.size(), 1u);
        }
    }
    EXPECT_EQ(boundary_length(s, net), 2 * static_cast<int>(cut.size()));
    EXPECT_TRUE(uncut_vertices_close(s, cut, net));
    int total = 0;
    for (auto [k, n] : tally(net)) total += n;
    EXPECT_EQ(total, static_cast<int>(s.edges().size()));
    EXPECT_EQ(tally(net)[FoldKind::Cut], static_cast<int>(cut.size()));
}

} // namespace

TEST(Unfold, CubeCross) {
    const auto s = extract_surface(catalog("Cube"));
    const auto cut = cross_cut(s);
    const auto net = unfold(s, cut);
    expect_consistent(s, cut, net);
    EXPECT_TRUE(overlap_check(net));
    EXPECT_EQ(tally(net)[FoldKind::Mountain], 5);

    std::set<Cell> cells;
    int min_i = 99, max_i = -99, min_j = 99, max_j = -99;
    for (const auto& f : net.faces) {
        cells.insert(f.cell);
        min_i = std::min(min_i, f.cell.i), max_i = std::max(max_i, f.cell.i);
        min_j = std::min(min_j, f.cell.j), max_j = std::max(max_j, f.cell.j);
    }
    EXPECT_EQ(cells.size(), 6u);
    EXPECT_EQ(std::set<int>({max_i - min_i + 1, max_j - min_j + 1}), (std::set<int>{3, 4}));
    int hubs = 0;
    for (const auto& c : cells) {
        int n = 0;
        for (Cell d : {Cell{c.i + 1, c.j}, Cell{c.i - 1, c.j}, Cell{c.i, c.j + 1}, Cell{c.i, c.j - 1}}) n += cells.count(d);
        hubs += n == 4;
    }
    EXPECT_EQ(hubs, 1);
}

TEST(Unfold, InvalidCuts) {
    const auto s = extract_surface(catalog("Cube"));
    auto expect_kind = [&](const CutTree& cut, InvalidCutKind kind) {
        try {
            unfold(s, cut);
            ADD_FAILURE() << "cut accepted";
        } catch (const InvalidCutError& e) {
            EXPECT_EQ(e.kind(), kind) << e.what();
        }
    };
    auto square = [&](int z) {
        return std::vector<std::pair<int, int>>{edge_at(s, {0, 0, z}, {1, 0, z}), edge_at(s, {1, 0, z}, {1, 1, z}),
                                                edge_at(s, {1, 1, z}, {0, 1, z}), edge_at(s, {0, 1, z}, {0, 0, z})};
    };
    auto cyc = square(0);
    cyc.push_back(edge_at(s, {0, 0, 0}, {0, 0, 1}));
    auto top = square(1);
    cyc.insert(cyc.end(), top.begin(), top.end() - 1);
    expect_kind(CutTree(cyc), InvalidCutKind::NotATree);

    auto partial = square(0);
    partial.pop_back();
    expect_kind(CutTree(partial), InvalidCutKind::MissesCorner);

    expect_kind(CutTree({{s.find_vertex({0, 0, 0}), s.find_vertex({1, 1, 1})}}), InvalidCutKind::UnknownEdge);
}

TEST(Unfold, CubeCensus) {
    const auto s = extract_surface(catalog("Cube"));
    const auto trees = spanning_cut_trees(skeleton_graph(s));
    EXPECT_EQ(trees.size(), 384u); // Kirchhoff count for the cube graph
    std::set<std::vector<Cell>> shapes;
    for (const auto& cut : trees) {
        const auto net = unfold(s, cut);
        EXPECT_TRUE(overlap_check(net));
        expect_consistent(s, cut, net);
        shapes.insert(canonical_cells(net));
    }
    EXPECT_EQ(shapes.size(), 11u);
}

TEST(Unfold, OverlapCheckFlagsSharedCell) {
    const auto s = extract_surface(catalog("Cube"));
    auto net = unfold(s, cross_cut(s));
    net.faces[1].cell = net.faces[0].cell;
    EXPECT_FALSE(overlap_check(net));
}

TEST(Unfold, CanonicalCellsIgnoreCongruence) {
    NetLayout a, b;
    for (Cell c : {Cell{0, 0}, Cell{1, 0}, Cell{1, 1}}) a.faces.push_back({c, {}});
    for (Cell c : {Cell{5, 5}, Cell{5, 6}, Cell{4, 6}}) b.faces.push_back({c, {}});
    EXPECT_EQ(canonical_cells(a), canonical_cells(b));
}

TEST(Unfold, ValleysOnReflexEdges) {
    const auto p = build_polycube({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, "L3");
    const auto s = extract_surface(p);
    const auto r = edge_unfolding_search(s, quick());
    ASSERT_EQ(r.status, SearchStatus::Found);
    expect_consistent(s, *r.cut, *r.net);
    int reflex_uncut = 0;
    for (const auto& e : s.edges())
        reflex_uncut += e.shape == EdgeShape::Reflex && !r.cut->contains(e.vertices[0], e.vertices[1]);
    EXPECT_EQ(tally(*r.net)[FoldKind::Valley], reflex_uncut);
}

TEST(EdgeSearch, CubeImmediately) {
    const auto r = edge_unfolding_search(extract_surface(catalog("Cube")), quick());
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_EQ(r.winning_restart, 0u);
    EXPECT_TRUE(overlap_check(*r.net));
}

TEST(EdgeSearch, P14) {
    const auto s = extract_surface(catalog("P14"));
    const auto r = edge_unfolding_search(s, quick());
    ASSERT_EQ(r.status, SearchStatus::Found);
    EXPECT_EQ(r.net->faces.size(), 48u);
    EXPECT_TRUE(overlap_check(*r.net));
    expect_consistent(s, *r.cut, *r.net);
    // The cut spans every corner.
    const auto cut_vertices = r.cut->vertices();
    const auto g = skeleton_graph(s);
    for (int v : g.corner_locals())
        EXPECT_TRUE(std::binary_search(cut_vertices.begin(), cut_vertices.end(), g.vertex(v).id));
}

TEST(EdgeSearch, DeterministicPerSeedAndThreads) {
    const auto s = extract_surface(catalog("P14"));
    auto cfg = quick(7);
    const auto a = edge_unfolding_search(s, cfg);
    const auto b = edge_unfolding_search(s, cfg);
    cfg.threads = 4;
    const auto c = edge_unfolding_search(s, cfg);
    ASSERT_EQ(a.status, SearchStatus::Found);
    EXPECT_EQ(a.cut, b.cut);
    EXPECT_EQ(a.cut, c.cut);
    EXPECT_EQ(a.winning_restart, c.winning_restart);
}

TEST(EdgeSearch, MoveBudget) {
    auto cfg = quick();
    cfg.max_expansions = 5;
    const auto r = edge_unfolding_search(extract_surface(catalog("P44")), cfg);
    EXPECT_EQ(r.status, SearchStatus::BudgetExhausted);
}

TEST(ZipperUnfold, P6Found) {
    const auto s = extract_surface(catalog("P6"));
    const auto r = zipper_unfolding_search(s, quick());
    ASSERT_EQ(r.status, SearchStatus::Found);
    ASSERT_TRUE(r.path && r.net);
    EXPECT_TRUE(overlap_check(*r.net));
    expect_consistent(s, CutTree::from_path(*r.path), *r.net);
}

TEST(ZipperUnfold, NoCutPath) {
    for (const char* name : {"P14", "P44"}) {
        const auto r = zipper_unfolding_search(extract_surface(catalog(name)), quick());
        EXPECT_EQ(r.status, SearchStatus::Absent) << name;
        EXPECT_EQ(r.detail, "no-cut-path") << name;
        EXPECT_EQ(r.paths_tried, 0u);
    }
}

TEST(Export, SvgColours) {
    const auto s = extract_surface(catalog("Cube"));
    const auto svg = net_to_svg(s, unfold(s, cross_cut(s)), 10);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("#00a000"), std::string::npos);
    EXPECT_NE(svg.find("#e00000"), std::string::npos);
    EXPECT_EQ(svg.find("#0000e0"), std::string::npos);
}

TEST(Export, FoldAssignments) {
    const auto s = extract_surface(catalog("P14"));
    const auto r = edge_unfolding_search(s, quick());
    ASSERT_EQ(r.status, SearchStatus::Found);
    const auto fold = nlohmann::json::parse(net_to_fold(s, *r.net));
    EXPECT_EQ(fold["faces_vertices"].size(), 48u);
    std::map<std::string, int> count;
    for (const auto& a : fold["edges_assignment"]) ++count[a.get<std::string>()];
    auto t = tally(*r.net);
    EXPECT_EQ(count["B"], 2 * t[FoldKind::Cut]);
    EXPECT_EQ(count["M"], t[FoldKind::Mountain]);
    EXPECT_EQ(count["V"], t[FoldKind::Valley]);
    EXPECT_EQ(count["F"], t[FoldKind::Flat]);
    EXPECT_EQ(fold["edges_vertices"].size(), fold["edges_assignment"].size());
}
