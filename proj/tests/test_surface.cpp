#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "polycube/catalog.hpp"
#include "polycube/random_tree.hpp"
#include "polycube/surface.hpp"

using namespace polycube;

TEST(Surface, CubeCounts) {
    const auto s = extract_surface(catalog("Cube"));
    EXPECT_EQ(s.faces().size(), 6u);
    EXPECT_EQ(s.edges().size(), 12u);
    EXPECT_EQ(s.vertices().size(), 8u);
    for (const auto& e : s.edges()) EXPECT_EQ(e.shape, EdgeShape::Convex);
}

TEST(Surface, P222Counts) {
    const auto s = extract_surface(catalog("P222"));
    EXPECT_EQ(s.faces().size(), 24u);
    EXPECT_EQ(s.edges().size(), 48u);
    EXPECT_EQ(s.vertices().size(), 26u);
    const auto g = skeleton_graph(s);
    EXPECT_EQ(g.corner_locals().size(), 8u);
    EXPECT_EQ(g.flat_locals().size(), 18u);
}

TEST(Surface, P6HasOnlyCorners) {
    const auto g = skeleton_graph(extract_surface(catalog("P6")));
    EXPECT_TRUE(g.flat_locals().empty());
}

TEST(Surface, DominoHasFourFlats) {
    const auto g = skeleton_graph(extract_surface(catalog("Domino")));
    EXPECT_EQ(g.size(), 12u);
    EXPECT_EQ(g.flat_locals().size(), 4u);
}

TEST(Surface, P14HasThreeFlats) {
    const auto p = catalog("P14");
    const auto g = skeleton_graph(extract_surface(p));
    std::set<Point3> flats;
    for (int v : g.flat_locals()) flats.insert(g.vertex(v).point);
    EXPECT_EQ(flats, (std::set<Point3>{p.annotations().at("a"), p.annotations().at("b"), p.annotations().at("c")}));
}

TEST(Surface, FaceWindingIsOutward) {
    // Right-hand rule on the first two face edges gives the outward normal.
    const auto s = extract_surface(catalog("P14"));
    for (const auto& f : s.faces()) {
        const Point3 a = s.vertices()[f.vertices[0]].point;
        const Point3 b = s.vertices()[f.vertices[1]].point;
        const Point3 c = s.vertices()[f.vertices[2]].point;
        const Point3 u = b - a;
        const Point3 v = c - b;
        const Point3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
        EXPECT_EQ(n, f.outward.offset());
    }
}

TEST(Surface, MatchesCellCountingOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_polycube(rng, 1 + trial % 20);
        const auto s = extract_surface(p);
        EXPECT_EQ(s.faces().size(), 6 * p.size() - 2 * oracle::dual_edges(p).size());

        const auto points = oracle::surface_points(p);
        std::set<Point3> got;
        for (const auto& v : s.vertices()) got.insert(v.point);
        EXPECT_EQ(got, points);

        const auto segs = oracle::surface_segments(p);
        std::set<std::pair<Point3, Point3>> got_segs;
        for (const auto& e : s.edges()) {
            auto a = s.vertices()[e.vertices[0]].point;
            auto b = s.vertices()[e.vertices[1]].point;
            got_segs.insert(std::minmax(a, b));
        }
        EXPECT_EQ(got_segs, segs);
        EXPECT_EQ(s.euler_characteristic(), 2);
    }
}

TEST(Skeleton, GaussBonnetAndAngleSum) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_polycube(rng, 1 + trial % 25);
        const auto s = extract_surface(p);
        const auto g = skeleton_graph(s);
        int turns = 0;
        int defect = 0;
        for (const auto& v : g.vertices()) {
            turns += v.quarter_turns;
            defect += 4 - v.quarter_turns;
            EXPECT_EQ(v.cls == VertexClass::Flat, v.surface_degree == 4 && v.quarter_turns == 4);
        }
        EXPECT_EQ(turns, 4 * static_cast<int>(s.faces().size()));
        EXPECT_EQ(defect, 8);
        EXPECT_EQ(g.edges().size(), s.edges().size());
    }
}

TEST(Skeleton, DeleteNothingIsIdentity) {
    const auto g = skeleton_graph(extract_surface(catalog("P14")));
    const auto h = delete_vertices(g, {});
    ASSERT_EQ(h.size(), g.size());
    EXPECT_EQ(h.edges(), g.edges());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(h.vertex(static_cast<int>(i)).id, g.vertex(static_cast<int>(i)).id);
}

TEST(Skeleton, DeleteKeepsIdsAndInducesEdges) {
    const auto g = skeleton_graph(extract_surface(catalog("P222")));
    std::set<int> drop;
    for (int v : g.flat_locals()) drop.insert(g.vertex(v).id);
    const auto h = delete_vertices(g, drop);
    EXPECT_EQ(h.size(), 8u);
    // Corners of a 2x2x2 block are never adjacent in the skeleton.
    EXPECT_TRUE(h.edges().empty());
    for (const auto& v : h.vertices()) EXPECT_EQ(g.vertex(g.local_of(v.id)).point, v.point);
}

TEST(Skeleton, DeleteUnknownIdThrows) {
    const auto g = skeleton_graph(extract_surface(catalog("Cube")));
    EXPECT_THROW(delete_vertices(g, {999}), UnknownVertexError);
}

TEST(Skeleton, DebugDumps) {
    const auto g = skeleton_graph(extract_surface(catalog("Cube")));
    const auto edges = skeleton_edge_list(g);
    EXPECT_EQ(std::count(edges.begin(), edges.end(), '\n'), 12);
    const auto classes = skeleton_vertex_classes(g);
    EXPECT_EQ(std::count(classes.begin(), classes.end(), '\n'), 8);
}
