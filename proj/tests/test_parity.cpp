#include <gtest/gtest.h>

#include <random>

#include "polycube/catalog.hpp"
#include "polycube/parity.hpp"
#include "polycube/random_tree.hpp"
#include "polycube/surface.hpp"

using namespace polycube;

namespace {

SkeletonGraph skeleton_of(const std::string& name) { return skeleton_graph(extract_surface(catalog(name))); }

/// Ids of the named annotation points.
std::set<int> ids_of(const SkeletonGraph& g, const Polycube& p, std::initializer_list<const char*> names) {
    std::set<int> out;
    for (const char* n : names) out.insert(g.vertex(g.local_at(p.annotations().at(n))).id);
    return out;
}

} // namespace

TEST(Parity, P222Counts) {
    const auto r = parity_report(skeleton_of("P222"));
    EXPECT_EQ(r.count0, 14);
    EXPECT_EQ(r.count1, 12);
    EXPECT_EQ(r.imbalance, 2);
}

TEST(Parity, CatalogImbalances) {
    EXPECT_EQ(parity_report(skeleton_of("P14")).imbalance, 2);
    EXPECT_EQ(parity_report(skeleton_of("P44")).imbalance, 2);
    EXPECT_EQ(parity_report(skeleton_of("Cube")).imbalance, 0);
}

TEST(Parity, P14FlatDeletions) {
    const auto p = catalog("P14");
    const auto g = skeleton_graph(extract_surface(p));
    const auto minus_a = delete_vertices(g, ids_of(g, p, {"a"}));
    EXPECT_EQ(parity_report(minus_a).imbalance, 3);
    const auto minus_ab = delete_vertices(g, ids_of(g, p, {"a", "b"}));
    EXPECT_EQ(parity_report(minus_ab).imbalance, 4);
    // x keeps only c as a neighbour.
    const int x = minus_ab.local_at(p.annotations().at("x"));
    ASSERT_GE(x, 0);
    EXPECT_EQ(minus_ab.degree(x), 1);
}

TEST(Parity, AddingOneCubeToP222KeepsImbalance) {
    const auto base = catalog("P222");
    for (const auto& d : kDirections) {
        auto cubes = base.cubes();
        Point3 c{0, 0, 0};
        if (d.positive) c.at(d.axis) = 1;
        cubes.push_back(c + d.offset());
        const auto g = skeleton_graph(extract_surface(build_polycube(cubes)));
        EXPECT_EQ(parity_report(g).imbalance, 2) << to_string(d);
    }
}

TEST(Parity, EverySkeletonIsBipartite) {
    std::mt19937_64 rng(3);
    for (const auto& name : {"Cube", "Domino", "P6", "P222", "P14", "P44"})
        EXPECT_TRUE(is_properly_colored(skeleton_of(name))) << name;
    for (int i = 0; i < 30; ++i) {
        const auto g = skeleton_graph(extract_surface(random_polycube(rng, 1 + i)));
        EXPECT_TRUE(is_properly_colored(g));
    }
}

TEST(Parity, TranslationFlipsOrKeepsColours) {
    const auto p = catalog("P14");
    const auto r = parity_report(skeleton_graph(extract_surface(p)));
    const auto even = parity_report(skeleton_graph(extract_surface(p.translated({1, 1, 0}))));
    const auto odd = parity_report(skeleton_graph(extract_surface(p.translated({1, 0, 0}))));
    EXPECT_EQ(even, r);
    EXPECT_EQ(odd.count0, r.count1);
    EXPECT_EQ(odd.count1, r.count0);
    EXPECT_EQ(odd.imbalance, r.imbalance);
}

TEST(Obstruction, IssuedOnlyAboveOne) {
    const auto p44 = hampath_obstruction(skeleton_of("P44"));
    ASSERT_TRUE(p44.has_value());
    EXPECT_EQ(p44->kind, ObstructionKind::ParityImbalance);
    EXPECT_EQ(p44->report.imbalance, 2);
    EXPECT_FALSE(p44->justification.empty());
    EXPECT_FALSE(hampath_obstruction(skeleton_of("Cube")).has_value());
    EXPECT_FALSE(hampath_obstruction(skeleton_of("P6")).has_value());
}

TEST(Obstruction, ColourFunction) {
    EXPECT_EQ(color({0, 0, 0}), 0);
    EXPECT_EQ(color({1, 0, 0}), 1);
    EXPECT_EQ(color({-1, 0, 0}), 1);
    EXPECT_EQ(color({-1, -1, 0}), 0);
}
