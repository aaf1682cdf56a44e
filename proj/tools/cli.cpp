#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "polycube/catalog.hpp"
#include "polycube/export.hpp"
#include "polycube/hampath.hpp"
#include "polycube/lattice.hpp"
#include "polycube/parity.hpp"
#include "polycube/random_tree.hpp"
#include "polycube/surface.hpp"
#include "polycube/unfold.hpp"
#include "polycube/validate.hpp"

namespace polycube::cli {

using json = nlohmann::json;

std::chrono::milliseconds parse_duration(const std::string& text) {
    static const std::regex re(R"(\s*([0-9]+(?:\.[0-9]+)?)\s*(ms|s|m|h)?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad duration: " + text);
    const double v = std::stod(m[1]);
    const std::string unit = m[2].matched ? m[2].str() : "s";
    const double ms = unit == "ms" ? v : unit == "s" ? v * 1e3 : unit == "m" ? v * 60e3 : v * 3600e3;
    if (ms < 1) throw std::invalid_argument("duration must be at least 1ms: " + text);
    return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

/// Input problem that is not the shape's fault (missing file, bad flag, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string shape;
    std::string input;
    std::optional<int> k;
    std::uint64_t seed = 0;
    std::string budget;
    unsigned threads = 0;
    std::string svg;
    std::string fold;
    std::string cut;
    std::string save_cut;
    std::string strategy = "auto";
    std::string claim;
    int trees = 1000;
    bool json = false;
};

struct Report {
    std::string command;
    json input = json::object();
    json config = json::object();
    json result = json::object();
    json stats = json::object();
    json artifacts = json::array();
    int exit_code = kOk;

    json to_json() const {
        return {{"command", command}, {"input", input},         {"config", config},      {"result", result},
                {"stats", stats},     {"artifacts", artifacts}, {"exit_code", exit_code}};
    }
};

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

std::string hex(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << v;
    return s.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body, Report& r, const std::string& kind) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << body;
    r.artifacts.push_back({{"kind", kind}, {"path", path}});
}

SearchConfig resolve_config(const Options& o, Report& r) {
    SearchConfig cfg;
    cfg.seed = o.seed;
    std::string budget = o.budget;
    if (budget.empty())
        if (const char* env = std::getenv("POLYCUBE_BUDGET")) budget = env;
    if (!budget.empty()) cfg.time_budget = parse_duration(budget);
    unsigned threads = o.threads;
    if (threads == 0)
        if (const char* env = std::getenv("POLYCUBE_THREADS")) {
            try {
                threads = static_cast<unsigned>(std::stoul(env));
            } catch (const std::exception&) {
                throw InputError(std::string("bad POLYCUBE_THREADS: ") + env);
            }
        }
    cfg.threads = std::max(1U, threads);
    r.config["seed"] = cfg.seed;
    r.config["budget_ms"] = cfg.time_budget.count();
    r.config["threads"] = cfg.threads;
    return cfg;
}

Polycube load_input(const Options& o, Report& r) {
    if (!o.input.empty() && !o.shape.empty()) throw InputError("give either --shape or --input, not both");
    if (!o.input.empty()) {
        const std::string text = read_file(o.input);
        r.input["source"] = "file:" + o.input;
        r.input["digest"] = "fnv1a64:" + hex(fnv1a64(text));
        return polycube_from_json(text);
    }
    if (o.shape.empty()) throw InputError("no input: use --shape NAME or --input FILE");
    Polycube p = catalog(o.shape, o.k);
    r.input["source"] = "shape:" + p.name();
    r.input["digest"] = "fnv1a64:" + hex(fnv1a64(polycube_to_json(p)));
    return p;
}

json stats_json(const SearchStats& s) {
    return {{"expansions", s.expansions},
            {"degree_prunes", s.degree_prunes},
            {"connectivity_prunes", s.connectivity_prunes},
            {"parity_prunes", s.parity_prunes},
            {"elapsed_ms", s.elapsed_ms}};
}

json obstruction_json(const std::optional<Obstruction>& o) {
    if (!o) return nullptr;
    return {{"kind", "parity-imbalance"},
            {"count0", o->report.count0},
            {"count1", o->report.count1},
            {"imbalance", o->report.imbalance},
            {"justification", o->justification}};
}

json sequence_json(const SkeletonGraph& g, const std::optional<VertexSequence>& seq) {
    if (!seq) return nullptr;
    json pts = json::array();
    for (int id : seq->ids) pts.push_back(point_json(g.vertex(g.local_of(id)).point));
    return {{"ids", seq->ids}, {"points", pts}, {"closed", seq->closed}};
}

/// Search payload: {"result": found|absent|budget, "path": ids, ...}.
json search_payload(const SkeletonGraph& g, SearchStatus status, const std::optional<VertexSequence>& seq,
                    const std::string& reason, const std::optional<Obstruction>& certificate) {
    json pts = json::array();
    if (seq)
        for (int id : seq->ids) pts.push_back(point_json(g.vertex(g.local_of(id)).point));
    return {{"result", to_string(status)},
            {"path", seq ? json(seq->ids) : json(nullptr)},
            {"points", seq ? pts : json(nullptr)},
            {"closed", seq ? json(seq->closed) : json(nullptr)},
            {"reason", reason},
            {"certificate", obstruction_json(certificate)}};
}

int status_exit(SearchStatus s) { return s == SearchStatus::BudgetExhausted ? kBudgetExhausted : kOk; }

json info_json(const Polycube& p) {
    const auto s = extract_surface(p);
    const auto g = skeleton_graph(s);
    const auto rep = parity_report(g);
    json flats = json::array();
    for (int v : g.flat_locals()) flats.push_back(point_json(g.vertex(v).point));
    return {{"name", p.name()},
            {"cubes", p.size()},
            {"vertices", s.vertices().size()},
            {"edges", s.edges().size()},
            {"faces", s.faces().size()},
            {"euler_characteristic", s.euler_characteristic()},
            {"corner_vertices", g.corner_locals().size()},
            {"flat_vertices", g.flat_locals().size()},
            {"flat_points", flats},
            {"parity", {{"count0", rep.count0}, {"count1", rep.count1}, {"imbalance", rep.imbalance}}},
            {"bipartite", is_properly_colored(g)},
            {"obstruction", obstruction_json(hampath_obstruction(g))},
            {"dual_edges", dual_graph(p).edges.size()},
            {"dual_tree", is_polycube_tree(p)}};
}

json cut_json(const SurfaceModel& s, const CutTree& cut) {
    json edges = json::array();
    for (const auto& [a, b] : cut.edges())
        edges.push_back({point_json(s.vertices()[a].point), point_json(s.vertices()[b].point)});
    return {{"edges", edges}};
}

CutTree cut_from_json(const SurfaceModel& s, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid cut JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
        throw FormatError("cut file needs an \"edges\" array");
    auto vertex = [&](const json& j) {
        if (!j.is_array() || j.size() != 3 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
            !j[2].is_number_integer())
            throw FormatError("cut endpoints must be [x, y, z] integer triples");
        const Point3 p{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
        const int id = s.find_vertex(p);
        if (id < 0) throw InvalidCutError(InvalidCutKind::UnknownEdge, "cut endpoint " + to_string(p) + " is not a surface vertex");
        return id;
    };
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2) throw FormatError("each cut edge is a pair of points");
        edges.emplace_back(vertex(e[0]), vertex(e[1]));
    }
    return CutTree(std::move(edges));
}

json net_json(const SurfaceModel& s, const CutTree& cut, const NetLayout& net) {
    std::map<std::string, int> folds;
    for (auto k : net.edges) ++folds[to_string(k)];
    json overlaps = json::array();
    for (const auto& o : net.overlaps) overlaps.push_back({{"cell", {o.cell.i, o.cell.j}}, {"faces", o.faces}});
    return {{"cells", net.faces.size()},
            {"nonoverlapping", overlap_check(net)},
            {"overlaps", overlaps},
            {"cut_edges", cut.size()},
            {"boundary_length", boundary_length(s, net)},
            {"uncut_vertices_close", uncut_vertices_close(s, cut, net)},
            {"folds", folds}};
}

void export_net(const Options& o, const SurfaceModel& s, const NetLayout& net, Report& r) {
    if (!o.svg.empty()) write_file(o.svg, net_to_svg(s, net), r, "svg");
    if (!o.fold.empty()) write_file(o.fold, net_to_fold(s, net), r, "fold");
}

// ---- commands -------------------------------------------------------------

void cmd_validate(const Options& o, Report& r) {
    try {
        const Polycube p = load_input(o, r);
        const auto s = extract_surface(p);
        r.result = {{"valid", true},
                    {"cubes", p.size()},
                    {"euler_characteristic", s.euler_characteristic()},
                    {"genus", (2 - s.euler_characteristic()) / 2}};
    } catch (const PolycubeError& e) {
        json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
        if (e.point) err["point"] = point_json(*e.point);
        if (e.edge) err["edge"] = {point_json(e.edge->first), point_json(e.edge->second)};
        if (e.value) err["value"] = *e.value;
        r.result = {{"valid", false}, {"error", err}};
        r.exit_code = kClaimFailed;
    }
}

void cmd_info(const Options& o, Report& r) { r.result = info_json(load_input(o, r)); }

void cmd_skeleton(const Options& o, Report& r) {
    const auto g = skeleton_graph(extract_surface(load_input(o, r)));
    json vertices = json::array();
    for (const auto& v : g.vertices())
        vertices.push_back({{"id", v.id},
                            {"point", point_json(v.point)},
                            {"class", to_string(v.cls)},
                            {"degree", v.surface_degree},
                            {"quarter_turns", v.quarter_turns}});
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({g.vertex(a).id, g.vertex(b).id});
    r.result = {{"vertices", vertices}, {"edges", edges}};
}

void cmd_ham(const Options& o, Report& r, bool cycle) {
    const auto cfg = resolve_config(o, r);
    const auto g = skeleton_graph(extract_surface(load_input(o, r)));
    const auto res = cycle ? find_hamiltonian_cycle(g, cfg) : find_hamiltonian_path(g, cfg);
    r.result = search_payload(g, res.status, res.sequence, res.reason, res.certificate);
    r.stats = stats_json(res.stats);
    r.exit_code = status_exit(res.status);
}

void cmd_tree_cycle(const Options& o, Report& r) {
    const Polycube p = load_input(o, r);
    const auto g = skeleton_graph(extract_surface(p));
    const auto res = tree_hamiltonian_cycle(p);
    r.result = {{"sequence", sequence_json(g, res.cycle)},
                {"verified", static_cast<bool>(check_hamiltonian_cycle(g, res.cycle))},
                {"patterns",
                 {{"three_edges", res.patterns.three_edges},
                  {"two_adjacent", res.patterns.two_adjacent},
                  {"two_opposite", res.patterns.two_opposite},
                  {"one_edge", res.patterns.one_edge}}}};
}

ZipperSearchResult run_zipper(const SkeletonGraph& g, const SearchConfig& cfg, const std::string& strategy,
                              std::string& used) {
    if (strategy == "direct") {
        used = "direct";
        return zipper_path_search(g, cfg, ZipperStrategy::DirectDFS);
    }
    try {
        used = "flat-subsets";
        return zipper_path_search(g, cfg, ZipperStrategy::FlatSubsets);
    } catch (const TooManyFlatVerticesError&) {
        if (strategy != "auto") throw;
        used = "direct";
        return zipper_path_search(g, cfg, ZipperStrategy::DirectDFS);
    }
}

json zipper_json(const SkeletonGraph& g, const ZipperSearchResult& z, const std::string& used) {
    json cases = json::array();
    for (const auto& c : z.cases)
        cases.push_back({{"included_flats", c.included_flats},
                         {"skipped_by_symmetry", c.skipped_by_symmetry},
                         {"status", c.skipped_by_symmetry ? "skipped" : to_string(c.result.status)},
                         {"reason", c.result.reason}});
    auto payload = search_payload(g, z.status, z.path, z.reason, z.certificate);
    payload["strategy"] = used;
    payload["cases"] = cases;
    return payload;
}

void cmd_zipper(const Options& o, Report& r) {
    const auto cfg = resolve_config(o, r);
    r.config["strategy"] = o.strategy;
    const auto g = skeleton_graph(extract_surface(load_input(o, r)));
    std::string used;
    const auto z = run_zipper(g, cfg, o.strategy, used);
    r.result = zipper_json(g, z, used);
    r.stats = stats_json(z.stats);
    r.exit_code = status_exit(z.status);
}

void cmd_unfold(const Options& o, Report& r) {
    if (o.cut.empty()) throw InputError("unfold needs --cut FILE");
    const auto s = extract_surface(load_input(o, r));
    const auto cut = cut_from_json(s, read_file(o.cut));
    const auto net = unfold(s, cut);
    r.result = net_json(s, cut, net);
    export_net(o, s, net, r);
}

void cmd_search_net(const Options& o, Report& r) {
    const auto cfg = resolve_config(o, r);
    const auto s = extract_surface(load_input(o, r));
    const auto res = edge_unfolding_search(s, cfg);
    r.result = {{"status", to_string(res.status)}, {"winning_restart", res.winning_restart}};
    if (res.cut) {
        r.result["cut"] = cut_json(s, *res.cut);
        r.result["net"] = net_json(s, *res.cut, *res.net);
        export_net(o, s, *res.net, r);
        if (!o.save_cut.empty()) write_file(o.save_cut, cut_json(s, *res.cut).dump(1) + "\n", r, "cut");
    }
    r.stats = {{"restarts", res.restarts}, {"moves", res.moves}, {"elapsed_ms", res.elapsed_ms}};
    r.exit_code = status_exit(res.status);
}

void cmd_zipper_net(const Options& o, Report& r) {
    const auto cfg = resolve_config(o, r);
    const auto s = extract_surface(load_input(o, r));
    const auto g = skeleton_graph(s);
    const auto res = zipper_unfolding_search(s, cfg);
    r.result = {{"status", to_string(res.status)},
                {"detail", res.detail},
                {"path", sequence_json(g, res.path)},
                {"certificate", obstruction_json(res.certificate)},
                {"paths_tried", res.paths_tried}};
    if (res.net) {
        const auto cut = CutTree::from_path(*res.path);
        r.result["net"] = net_json(s, cut, *res.net);
        export_net(o, s, *res.net, r);
    }
    r.stats = stats_json(res.stats);
    r.exit_code = status_exit(res.status);
}

// ---- claims ---------------------------------------------------------------

struct Claim {
    bool holds = true;
    bool budget = false;
    std::string statement;
    json details = json::object();

    void require(bool ok, const std::string& what) {
        if (!ok) {
            holds = false;
            details["failures"].push_back(what);
        }
    }
};

Claim claim_lemma1(const Options& o) {
    Claim c;
    c.statement = "the skeleton of every polycube tree has a Hamiltonian cycle";
    std::mt19937_64 rng(o.seed);
    SplicePatternCounts totals;
    int cross_checked = 0, largest = 0;
    for (int t = 0; t < o.trees; ++t) {
        const int n = std::uniform_int_distribution<int>(1, 30)(rng);
        const Polycube p = random_polycube_tree(rng, n);
        largest = std::max(largest, static_cast<int>(p.size()));
        const auto g = skeleton_graph(extract_surface(p));
        try {
            const auto res = tree_hamiltonian_cycle(p);
            c.require(static_cast<bool>(check_hamiltonian_cycle(g, res.cycle)), "tree " + std::to_string(t) + " rejected");
            totals.three_edges += res.patterns.three_edges;
            totals.two_adjacent += res.patterns.two_adjacent;
            totals.two_opposite += res.patterns.two_opposite;
            totals.one_edge += res.patterns.one_edge;
        } catch (const TreeCycleError& e) {
            c.require(false, "tree " + std::to_string(t) + ": " + e.what());
        }
        if (p.size() <= 6) {
            ++cross_checked;
            c.require(find_hamiltonian_cycle(g, SearchConfig{}).status == SearchStatus::Found,
                      "exhaustive search disagrees on tree " + std::to_string(t));
        }
    }
    c.details = {{"trees", o.trees},
                 {"largest", largest},
                 {"cross_checked", cross_checked},
                 {"patterns",
                  {{"three_edges", totals.three_edges},
                   {"two_adjacent", totals.two_adjacent},
                   {"two_opposite", totals.two_opposite},
                   {"one_edge", totals.one_edge}}}};
    return c;
}

Claim claim_lemma2(const Options& o) {
    Claim c;
    c.statement = "every polycube skeleton is 2-colourable by coordinate-sum parity";
    int checked = 0;
    auto check = [&](const Polycube& p) {
        ++checked;
        c.require(is_properly_colored(skeleton_graph(extract_surface(p))), p.name() + " has a monochromatic edge");
    };
    for (const auto& n : catalog_names()) {
        if (n == "P44tower") {
            for (int k = 1; k <= 3; ++k) check(p44_tower(k));
        } else {
            check(catalog(n));
        }
    }
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < 200; ++i) check(random_polycube(rng, std::uniform_int_distribution<int>(1, 20)(rng)));
    c.details = {{"shapes_checked", checked}};
    return c;
}

Claim claim_lemma3(const Options& o) {
    Claim c;
    c.statement = "a bipartite graph with parity imbalance > 1 has no Hamiltonian path";
    SearchConfig exhaustive;
    exhaustive.prune_parity = false;
    const auto p222 = skeleton_graph(extract_surface(catalog("P222")));
    const auto r = find_hamiltonian_path(p222, exhaustive);
    c.require(parity_report(p222).imbalance == 2, "P222 imbalance is not 2");
    c.require(r.status == SearchStatus::Absent, "exhaustive search on P222 did not return Absent");
    std::mt19937_64 rng(o.seed);
    int imbalanced = 0, balanced_found = 0, samples = 0;
    for (int i = 0; i < 300; ++i) {
        const auto g = random_grid_graph(rng, 5, 6, 0.85);
        if (g.empty()) continue;
        ++samples;
        const auto res = find_hamiltonian_path(g, exhaustive);
        c.require(res.status != SearchStatus::BudgetExhausted, "sample search ran out of budget");
        if (parity_report(g).imbalance > 1) {
            ++imbalanced;
            c.require(res.status == SearchStatus::Absent, "imbalanced sample " + std::to_string(i) + " has a path");
        } else if (res.status == SearchStatus::Found) {
            ++balanced_found;
        }
    }
    c.details = {{"p222_exhaustive", to_string(r.status)},
                 {"p222_expansions", r.stats.expansions},
                 {"grid_samples", samples},
                 {"imbalanced_samples", imbalanced},
                 {"balanced_with_path", balanced_found}};
    return c;
}

Claim claim_parity(const std::string& shape, const std::string& statement) {
    Claim c;
    c.statement = statement;
    const auto g = skeleton_graph(extract_surface(catalog(shape)));
    const auto rep = parity_report(g);
    c.require(is_properly_colored(g), "skeleton is not properly coloured");
    c.require(rep.imbalance == 2, "imbalance is " + std::to_string(rep.imbalance));
    c.details = {{"count0", rep.count0}, {"count1", rep.count1}, {"imbalance", rep.imbalance}};
    return c;
}

Claim claim_no_zipper(const std::string& shape, const std::string& statement, bool expect_flats) {
    Claim c;
    c.statement = statement;
    const auto g = skeleton_graph(extract_surface(catalog(shape)));
    const auto z = zipper_path_search(g, SearchConfig{}, ZipperStrategy::FlatSubsets);
    const auto d = zipper_path_search(g, SearchConfig{}, ZipperStrategy::DirectDFS);
    c.require(z.status == SearchStatus::Absent, "flat-subset search: " + to_string(z.status));
    c.require(d.status == SearchStatus::Absent, "direct search: " + to_string(d.status));
    std::size_t examined = 0;
    for (const auto& cs : z.cases) examined += !cs.skipped_by_symmetry;
    c.require(examined == (std::size_t{1} << g.flat_locals().size()), "not every flat subset was examined");
    if (!expect_flats) c.require(z.certificate.has_value(), "no parity certificate attached");
    c.details = {{"flat_vertices", g.flat_locals().size()},
                 {"cases", zipper_json(g, z, "flat-subsets")["cases"]},
                 {"certificate", obstruction_json(z.certificate)},
                 {"direct_dfs", to_string(d.status)}};
    return c;
}

Claim claim_edge_net(const std::string& shape, const SearchConfig& cfg, const Options& o, Report& r) {
    Claim c;
    c.statement = shape + " has an edge unfolding";
    const auto s = extract_surface(catalog(shape));
    const auto res = edge_unfolding_search(s, cfg);
    if (res.status != SearchStatus::Found) {
        c.holds = false;
        c.budget = true;
        c.details = {{"status", to_string(res.status)}, {"restarts", res.restarts}};
        return c;
    }
    const auto net = unfold(s, *res.cut);
    c.require(overlap_check(net), "net overlaps");
    c.require(boundary_length(s, net) == 2 * static_cast<int>(res.cut->size()), "boundary length mismatch");
    c.require(uncut_vertices_close(s, *res.cut, net), "an uncut vertex does not close");
    c.details = {{"seed", cfg.seed}, {"cut", cut_json(s, *res.cut)}, {"net", net_json(s, *res.cut, net)},
                 {"restarts", res.restarts}};
    export_net(o, s, net, r);
    return c;
}

Claim claim_p6_zipper(const Options& o, Report& r) {
    Claim c;
    c.statement = "P6 has an edge zipper unfolding";
    const auto s = extract_surface(catalog("P6"));
    const auto res = zipper_unfolding_search(s, SearchConfig{});
    c.require(res.status == SearchStatus::Found, "zipper net search: " + to_string(res.status) + " " + res.detail);
    if (res.net) {
        const auto g = skeleton_graph(s);
        c.require(static_cast<bool>(check_zipper_path(g, *res.path)), "path is not a zipper path");
        c.require(overlap_check(*res.net), "net overlaps");
        c.details = {{"path", sequence_json(g, res.path)},
                     {"net", net_json(s, CutTree::from_path(*res.path), *res.net)},
                     {"paths_tried", res.paths_tried}};
        export_net(o, s, *res.net, r);
    }
    return c;
}

Claim claim_tower(const Options& o) {
    const int k = o.k.value_or(1);
    Claim c;
    c.statement = "P44tower(" + std::to_string(k) + ") has no edge zipper unfolding";
    const Polycube p = p44_tower(k);
    const auto g = skeleton_graph(extract_surface(p));
    const auto rep = parity_report(g);
    c.require(p.size() == static_cast<std::size_t>(44 + 6 * k), "cube count is " + std::to_string(p.size()));
    c.require(g.flat_locals().empty(), "tower has flat vertices");
    c.require(rep.imbalance == 2, "imbalance is " + std::to_string(rep.imbalance));
    const auto z = zipper_path_search(g, SearchConfig{}, ZipperStrategy::FlatSubsets);
    c.require(z.status == SearchStatus::Absent && z.certificate.has_value(), "zipper search not refuted by parity");
    c.details = {{"k", k},
                 {"cubes", p.size()},
                 {"flat_vertices", g.flat_locals().size()},
                 {"parity", {{"count0", rep.count0}, {"count1", rep.count1}, {"imbalance", rep.imbalance}}},
                 {"certificate", obstruction_json(z.certificate)}};
    return c;
}

void cmd_reproduce(const Options& o, Report& r) {
    const auto cfg = resolve_config(o, r);
    r.config["claim"] = o.claim;
    if (o.k) r.config["k"] = *o.k;
    Claim c;
    const std::string& id = o.claim;
    if (id == "lemma1") {
        r.config["trees"] = o.trees;
        c = claim_lemma1(o);
    } else if (id == "lemma2") {
        c = claim_lemma2(o);
    } else if (id == "lemma3-sanity") {
        c = claim_lemma3(o);
    } else if (id == "lemma4") {
        c = claim_parity("P44", "the skeleton of P44 has parity imbalance 2");
        const auto p222 = parity_report(skeleton_graph(extract_surface(catalog("P222"))));
        c.details["p222"] = {{"count0", p222.count0}, {"count1", p222.count1}, {"imbalance", p222.imbalance}};
        c.require(p222.count0 == 14 && p222.count1 == 12, "P222 colour classes are not 14 and 12");
    } else if (id == "lemma5") {
        c = claim_parity("P14", "the skeleton of P14 has parity imbalance 2");
    } else if (id == "theorem1") {
        c = claim_no_zipper("P44", "P44 has no edge zipper unfolding", false);
    } else if (id == "theorem2") {
        c = claim_no_zipper("P14", "P14 has no edge zipper unfolding", true);
    } else if (id == "p6-zipper-net") {
        c = claim_p6_zipper(o, r);
    } else if (id == "p14-net") {
        c = claim_edge_net("P14", cfg, o, r);
    } else if (id == "p44-net") {
        c = claim_edge_net("P44", cfg, o, r);
    } else if (id == "tower") {
        c = claim_tower(o);
    } else {
        throw InputError("unknown claim: " + id);
    }
    r.result = {{"claim", id}, {"holds", c.holds}, {"statement", c.statement}, {"details", c.details}};
    r.exit_code = c.holds ? kOk : c.budget ? kBudgetExhausted : kClaimFailed;
}

// ---- output ---------------------------------------------------------------

void print_human(const Report& r, std::ostream& out) {
    out << r.command;
    if (r.input.contains("source")) out << "  " << r.input["source"].get<std::string>();
    out << '\n';
    for (const auto& [key, value] : r.result.items()) {
        if (value.is_array() && value.size() > 12) {
            out << "  " << key << ": [" << value.size() << " items]\n";
        } else if (value.is_object() && value.dump().size() > 160) {
            out << "  " << key << ":\n";
            for (const auto& [k2, v2] : value.items()) {
                const auto text = v2.dump();
                out << "    " << k2 << ": " << (text.size() > 160 ? text.substr(0, 157) + "..." : text) << '\n';
            }
        } else {
            out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    }
    for (const auto& a : r.artifacts) out << "  wrote " << a["path"].get<std::string>() << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Polycube surfaces: validation, parity certificates, Hamiltonian and zipper searches, nets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "polycube 1.0");

    auto input_opts = [&](CLI::App* sub) {
        sub->add_option("--shape", o.shape, "catalog shape (Cube, Domino, P6, P6minus, P222, Pplus, P14, P44, P44tower)");
        sub->add_option("--input", o.input, "polycube JSON file");
        sub->add_option("--k", o.k, "tower height for P44tower");
        sub->add_flag("--json", o.json, "print the run report as JSON");
    };
    auto search_opts = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "random seed (default 0)");
        sub->add_option("--budget", o.budget, "time budget, e.g. 600s, 10m, 250ms (env POLYCUBE_BUDGET)");
        sub->add_option("--threads", o.threads, "worker threads (env POLYCUBE_THREADS)");
    };
    auto net_opts = [&](CLI::App* sub) {
        sub->add_option("--svg", o.svg, "write the net as SVG");
        sub->add_option("--fold", o.fold, "write the net as a FOLD file");
    };

    std::map<CLI::App*, std::string> names;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        names[s] = name;
        input_opts(s);
        return s;
    };
    auto* validate = sub("validate", "check that a cube set is a valid polycube");
    validate->add_option("file", o.input, "polycube JSON file");
    sub("info", "counts, vertex classes, parity and dual-tree flag");
    sub("skeleton", "dump the skeleton graph");
    search_opts(sub("ham-path", "search for a Hamiltonian path of the skeleton"));
    search_opts(sub("ham-cycle", "search for a Hamiltonian cycle of the skeleton"));
    sub("tree-cycle", "constructive Hamiltonian cycle for a polycube tree");
    auto* zipper = sub("zipper", "search for a cut path through every corner");
    search_opts(zipper);
    zipper->add_option("--strategy", o.strategy, "auto, flat-subsets or direct")
        ->check(CLI::IsMember({"auto", "flat-subsets", "direct"}));
    auto* unf = sub("unfold", "develop a given cut tree into a net");
    unf->add_option("--cut", o.cut, "cut JSON: {\"edges\": [[[x,y,z],[x,y,z]], ...]}");
    net_opts(unf);
    auto* search_net = sub("search-net", "search for an edge unfolding");
    search_opts(search_net);
    net_opts(search_net);
    search_net->add_option("--save-cut", o.save_cut, "write the found cut as JSON");
    auto* zipper_net = sub("zipper-net", "search for a zipper unfolding");
    search_opts(zipper_net);
    net_opts(zipper_net);
    auto* reproduce = sub("reproduce", "check one published claim");
    reproduce
        ->add_option("claim", o.claim,
                     "lemma1, lemma2, lemma3-sanity, lemma4, lemma5, theorem1, theorem2, p6-zipper-net, p14-net, "
                     "p44-net, tower")
        ->required();
    reproduce->add_option("--trees", o.trees, "random trees for lemma1")->check(CLI::PositiveNumber);
    search_opts(reproduce);
    net_opts(reproduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    Report r;
    for (const auto& [s, name] : names)
        if (s->parsed()) r.command = name;
    try {
        if (r.command == "validate") cmd_validate(o, r);
        else if (r.command == "info") cmd_info(o, r);
        else if (r.command == "skeleton") cmd_skeleton(o, r);
        else if (r.command == "ham-path") cmd_ham(o, r, false);
        else if (r.command == "ham-cycle") cmd_ham(o, r, true);
        else if (r.command == "tree-cycle") cmd_tree_cycle(o, r);
        else if (r.command == "zipper") cmd_zipper(o, r);
        else if (r.command == "unfold") cmd_unfold(o, r);
        else if (r.command == "search-net") cmd_search_net(o, r);
        else if (r.command == "zipper-net") cmd_zipper_net(o, r);
        else if (r.command == "reproduce") cmd_reproduce(o, r);
    } catch (const std::exception& e) {
        // Everything that escapes a command is a problem with the input.
        std::string kind = "input";
        if (dynamic_cast<const FormatError*>(&e)) kind = "format";
        else if (dynamic_cast<const PolycubeError*>(&e)) kind = "invalid-polycube";
        else if (dynamic_cast<const UnknownShapeError*>(&e)) kind = "unknown-shape";
        else if (dynamic_cast<const InvalidCutError*>(&e)) kind = "invalid-cut";
        else if (dynamic_cast<const TreeCycleError*>(&e)) kind = "not-a-tree";
        else if (dynamic_cast<const InvariantViolation*>(&e)) kind = "catalog-invariant";
        else if (!dynamic_cast<const InputError*>(&e) && !dynamic_cast<const std::invalid_argument*>(&e)) kind = "internal";
        r.result = {{"error", {{"kind", kind}, {"message", e.what()}}}};
        r.exit_code = kInputError;
        if (!o.json) err << "error (" << kind << "): " << e.what() << '\n';
    }
    if (o.json)
        out << r.to_json().dump(2) << '\n';
    else if (r.exit_code != kInputError)
        print_human(r, out);
    return r.exit_code;
}

} // namespace polycube::cli
