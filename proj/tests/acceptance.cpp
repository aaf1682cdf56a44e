// Acceptance gate: one PASS/FAIL line per criterion, with the time limit
// each is held to. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "polycube/catalog.hpp"
#include "polycube/hampath.hpp"
#include "polycube/parity.hpp"
#include "polycube/random_tree.hpp"
#include "polycube/unfold.hpp"
#include "polycube/validate.hpp"

using namespace polycube;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

/// Collects failures; the first failure message is kept as the note.
struct Check {
    Outcome out;
    void operator()(bool ok, const std::string& what) {
        if (!ok && out.pass) {
            out.pass = false;
            out.note = what;
        }
    }
};

nlohmann::json info(const std::string& shape) {
    const char* argv[] = {"polycube", "info", "--shape", shape.c_str(), "--json"};
    std::ostringstream out, err;
    cli::run(5, argv, out, err);
    return nlohmann::json::parse(out.str())["result"];
}

SkeletonGraph skeleton_of(const Polycube& p) { return skeleton_graph(extract_surface(p)); }

Outcome parity_arithmetic() {
    Check c;
    const auto p222 = info("P222");
    c(p222["parity"]["count0"] == 14 && p222["parity"]["count1"] == 12, "P222 colour counts are not (14, 12)");
    for (const char* name : {"P222", "P14", "P44"}) {
        const auto j = info(name);
        c(j["parity"]["imbalance"] == 2, std::string(name) + " imbalance is not 2");
        c(j["bipartite"] == true, std::string(name) + " has a monochromatic edge");
    }
    std::ostringstream note;
    note << "P222 (" << p222["parity"]["count0"] << ", " << p222["parity"]["count1"] << "), imbalance 2 for P222/P14/P44";
    if (c.out.pass) c.out.note = note.str();
    return c.out;
}

Outcome classification_gates() {
    Check c;
    const auto p44 = skeleton_of(catalog("P44"));
    c(p44.flat_locals().empty(), "P44 has flat vertices");
    const auto p14 = skeleton_of(catalog("P14"));
    const auto flats = p14.flat_locals();
    c(flats.size() == 3, "P14 does not have exactly 3 flats");
    const std::set<int> flat_set(flats.begin(), flats.end());
    bool hub = false;
    for (int v : p14.corner_locals()) {
        const auto& n = p14.neighbors(v);
        hub |= std::set<int>(n.begin(), n.end()) == flat_set;
    }
    c(hub, "no P14 corner is adjacent to exactly the 3 flats");
    const auto p6 = catalog("P6");
    c(skeleton_of(p6).flat_locals().empty(), "P6 has flat vertices");
    c(is_polycube_tree(p6), "P6 dual graph is not a tree");
    if (c.out.pass) c.out.note = "P44: 0 flats; P14: 3 flats + hub corner; P6: 0 flats, tree";
    return c.out;
}

Outcome theorem1() {
    Check c;
    const auto g = skeleton_of(catalog("P44"));
    const auto r = zipper_path_search(g, SearchConfig{}, ZipperStrategy::DirectDFS);
    c(r.status == SearchStatus::Absent, "P44 zipper search did not return Absent");
    c(r.certificate.has_value() && r.certificate->kind == ObstructionKind::ParityImbalance,
      "no parity obstruction attached");
    if (c.out.pass) c.out.note = "Absent, parity certificate (imbalance " + std::to_string(r.certificate->report.imbalance) + ")";
    return c.out;
}

Outcome theorem2() {
    Check c;
    const auto g = skeleton_of(catalog("P14"));
    SearchConfig cfg;
    cfg.threads = 1;
    const auto r = zipper_path_search(g, cfg, ZipperStrategy::FlatSubsets);
    c(r.status == SearchStatus::Absent, "FlatSubsets did not return Absent");
    c(r.cases.size() == 8, "not all 8 flat subsets examined");
    for (const auto& k : r.cases) c(!k.skipped_by_symmetry && k.result.status == SearchStatus::Absent, "a subset is not Absent");
    const auto d = zipper_path_search(g, cfg, ZipperStrategy::DirectDFS);
    c(d.status == SearchStatus::Absent, "DirectDFS disagrees");
    if (c.out.pass)
        c.out.note = "8/8 subsets Absent, DirectDFS agrees (" + std::to_string(r.stats.expansions + d.stats.expansions) +
                     " expansions)";
    return c.out;
}

Outcome lemma1() {
    Check c;
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> size(1, 30);
    SearchConfig cfg;
    int small = 0;
    for (int i = 0; i < 1000 && c.out.pass; ++i) {
        const auto p = random_polycube_tree(rng, size(rng));
        const auto g = skeleton_of(p);
        const auto r = tree_hamiltonian_cycle(p);
        const auto v = check_hamiltonian_cycle(g, r.cycle);
        c(v.ok, "tree " + std::to_string(i) + ": " + v.message);
        if (p.size() <= 6) {
            ++small;
            c(find_hamiltonian_cycle(g, cfg).status == SearchStatus::Found,
              "tree " + std::to_string(i) + ": exhaustive search disagrees");
        }
    }
    if (c.out.pass) c.out.note = "1000/1000 cycles validated, " + std::to_string(small) + " cross-checked exhaustively";
    return c.out;
}

Outcome p6_zipper() {
    Check c;
    const auto r = zipper_unfolding_search(extract_surface(catalog("P6")), SearchConfig{});
    c(r.status == SearchStatus::Found && r.net && overlap_check(*r.net), "no nonoverlapping zipper net for P6");
    if (c.out.pass) c.out.note = "path of " + std::to_string(r.path->ids.size()) + " vertices, " +
                                 std::to_string(r.paths_tried) + " paths tried";
    return c.out;
}

Outcome edge_nets() {
    Check c;
    SearchConfig cfg; // seed 0, 10 minute default budget
    const auto s14 = extract_surface(catalog("P14"));
    const auto r14 = edge_unfolding_search(s14, cfg);
    c(r14.status == SearchStatus::Found && overlap_check(*r14.net), "P14: no net within the default budget");
    std::string note = "P14 seed 0 restart " + std::to_string(r14.winning_restart);
    // P44 is allowed to exhaust its budget without failing the gate.
    const auto s44 = extract_surface(catalog("P44"));
    const auto r44 = edge_unfolding_search(s44, cfg);
    if (r44.status == SearchStatus::Found) {
        c(overlap_check(*r44.net), "P44: reported net overlaps");
        note += "; P44 seed 0 restart " + std::to_string(r44.winning_restart);
    } else {
        note += "; P44 budget exhausted (not gating)";
    }
    if (c.out.pass) c.out.note = note;
    return c.out;
}

Outcome towers() {
    Check c;
    std::set<Point3> base;
    for (const auto& v : skeleton_of(catalog("P44")).vertices()) base.insert(v.point);
    for (int k = 1; k <= 3; ++k) {
        const auto p = p44_tower(k);
        const auto g = skeleton_of(p);
        const auto tag = "k=" + std::to_string(k) + ": ";
        c(p.size() == 44u + 6u * k, tag + "wrong cube count");
        for (const auto& v : g.vertices())
            if (!base.count(v.point)) c(v.cls == VertexClass::Corner, tag + "new flat at " + to_string(v.point));
        c(parity_report(g).imbalance == 2, tag + "imbalance is not 2");
        const auto r = zipper_path_search(g, SearchConfig{}, ZipperStrategy::DirectDFS);
        c(r.status == SearchStatus::Absent && r.certificate.has_value(), tag + "no certificate");
    }
    if (c.out.pass) c.out.note = "k=1..3: 50/56/62 cubes, no new flats, imbalance 2, certified Absent";
    return c.out;
}

Outcome cube_census() {
    Check c;
    const auto s = extract_surface(catalog("Cube"));
    const auto trees = spanning_cut_trees(skeleton_graph(s));
    std::set<std::vector<Cell>> shapes;
    for (const auto& cut : trees) {
        const auto net = unfold(s, cut);
        c(overlap_check(net), "an overlapping cube net");
        c(boundary_length(s, net) == 2 * static_cast<int>(cut.size()), "boundary length != 2 x cut edges");
        c(uncut_vertices_close(s, cut, net), "an uncut vertex does not close");
        shapes.insert(canonical_cells(net));
    }
    c(shapes.size() == 11, "census gives " + std::to_string(shapes.size()) + " nets");
    if (c.out.pass)
        c.out.note = std::to_string(trees.size()) + " cut trees, " + std::to_string(shapes.size()) + " distinct nets";
    return c.out;
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "parity arithmetic", 1.0, parity_arithmetic},
        {2, "classification gates", 1.0, classification_gates},
        {3, "P44 has no zipper path (certificate)", 1.0, theorem1},
        {4, "P14 has no zipper path (all flat subsets)", 300.0, theorem2},
        {5, "tree Hamiltonian cycles", 120.0, lemma1},
        {6, "P6 zipper unfolding", 60.0, p6_zipper},
        {7, "P14/P44 edge unfoldings", 600.0 + 600.0, edge_nets},
        {8, "P44 tower family", 5.0, towers},
        {9, "cube net census", 60.0, cube_census},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < cr.limit_s;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << cr.id << "  " << cr.name << "  [" << std::fixed
                  << std::setprecision(3) << secs << "s < " << std::setprecision(0) << cr.limit_s << "s]  "
                  << (in_time ? o.note : "over time limit; " + o.note) << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
