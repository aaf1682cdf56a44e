#include "polycube/unfold.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace polycube {

CutTree::CutTree(std::vector<std::pair<int, int>> edges) : edges_(std::move(edges)) {
    for (auto& [a, b] : edges_)
        if (a > b) std::swap(a, b);
    std::sort(edges_.begin(), edges_.end());
}

bool CutTree::contains(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
}

std::vector<int> CutTree::vertices() const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        out.push_back(a);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CutTree CutTree::from_path(const VertexSequence& path) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i < path.ids.size(); ++i) edges.emplace_back(path.ids[i - 1], path.ids[i]);
    if (path.closed && path.ids.size() > 2) edges.emplace_back(path.ids.back(), path.ids.front());
    return CutTree(std::move(edges));
}

InvalidCutError::InvalidCutError(InvalidCutKind kind, std::string message, int vertex)
    : std::invalid_argument(std::move(message)), kind_(kind), vertex_(vertex) {}

std::string to_string(FoldKind k) {
    switch (k) {
        case FoldKind::Cut: return "cut";
        case FoldKind::Mountain: return "mountain";
        case FoldKind::Valley: return "valley";
        case FoldKind::Flat: return "flat";
    }
    return "?";
}

Point2 cell_corner(const Cell& c, int corner) {
    static constexpr std::array<Point2, 4> offsets{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const auto& o = offsets[((corner % 4) + 4) % 4];
    return {c.i + o.x, c.j + o.y};
}

Point2 NetLayout::vertex_image(int f, int m) const {
    const auto& p = faces[f];
    return cell_corner(p.cell, p.frame.corner_of(m));
}

namespace {

/// For each face side: the face across it and that face's side index.
struct SideTable {
    std::vector<std::array<std::pair<int, int>, 4>> across;

    explicit SideTable(const SurfaceModel& s) : across(s.faces().size()) {
        for (int f = 0; f < static_cast<int>(s.faces().size()); ++f) {
            for (int e = 0; e < 4; ++e) {
                const auto& edge = s.edges()[s.faces()[f].edges[e]];
                const int g = edge.faces[0] == f ? edge.faces[1] : edge.faces[0];
                const auto& ge = s.faces()[g].edges;
                const int e2 = static_cast<int>(std::find(ge.begin(), ge.end(), s.faces()[f].edges[e]) - ge.begin());
                across[f][e] = {g, e2};
            }
        }
    }
};

Cell step(const Cell& c, int side) {
    switch (side) {
        case 0: return {c.i, c.j - 1};
        case 1: return {c.i + 1, c.j};
        case 2: return {c.i, c.j + 1};
        default: return {c.i - 1, c.j};
    }
}

struct Development {
    std::vector<FacePlacement> faces;
    int placed = 0;
    bool consistent = true;
};

/// Rolls the faces across every uncut edge, breadth first from face 0.
Development develop(const SurfaceModel& s, const SideTable& t, const std::vector<char>& cut_edge) {
    const int n = static_cast<int>(s.faces().size());
    Development d;
    d.faces.resize(n);
    std::vector<char> placed(n, 0);
    std::vector<int> queue{0};
    queue.reserve(n);
    placed[0] = 1;
    d.placed = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int f = queue[head];
        const auto& pf = d.faces[f];
        for (int e = 0; e < 4; ++e) {
            if (cut_edge[s.faces()[f].edges[e]]) continue;
            const auto [g, e2] = t.across[f][e];
            const int side = pf.frame.corner_of(e);
            // The shared edge runs the other way round g, so it lands on the opposite cell side.
            const FacePlacement want{step(pf.cell, side), Frame{((side + 2 - e2) % 4 + 4) % 4, false}};
            if (!placed[g]) {
                placed[g] = 1;
                ++d.placed;
                d.faces[g] = want;
                queue.push_back(g);
            } else if (d.faces[g].cell != want.cell || !(d.faces[g].frame == want.frame)) {
                d.consistent = false;
            }
        }
    }
    return d;
}

std::vector<CellOverlap> find_overlaps(const std::vector<FacePlacement>& faces) {
    std::map<Cell, std::vector<int>> by_cell;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) by_cell[faces[f].cell].push_back(f);
    std::vector<CellOverlap> out;
    for (auto& [cell, fs] : by_cell)
        if (fs.size() > 1) out.push_back({cell, std::move(fs)});
    return out;
}

/// Number of faces beyond the first on each cell.
int overlap_score(std::vector<Cell>& scratch, const std::vector<FacePlacement>& faces) {
    scratch.clear();
    for (const auto& p : faces) scratch.push_back(p.cell);
    std::sort(scratch.begin(), scratch.end());
    int dup = 0;
    for (std::size_t i = 1; i < scratch.size(); ++i) dup += scratch[i] == scratch[i - 1];
    return dup;
}

std::vector<char> cut_mask(const SurfaceModel& s, const CutTree& cut) {
    const int nv = static_cast<int>(s.vertices().size());
    std::vector<char> mask(s.edges().size(), 0);
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& [a, b] : cut.edges()) {
        const int e = (a < 0 || b < 0 || a >= nv || b >= nv) ? -1 : s.find_edge(a, b);
        if (e < 0)
            throw InvalidCutError(InvalidCutKind::UnknownEdge,
                                  "cut edge " + std::to_string(a) + "-" + std::to_string(b) + " is not a skeleton edge", a);
        const int ra = find(a), rb = find(b);
        if (ra == rb)
            throw InvalidCutError(InvalidCutKind::NotATree,
                                  "cut edge " + std::to_string(a) + "-" + std::to_string(b) + " closes a cycle", a);
        parent[ra] = rb;
        mask[e] = 1;
    }
    const auto verts = cut.vertices();
    if (verts.size() != cut.size() + 1 && !cut.edges().empty())
        throw InvalidCutError(InvalidCutKind::NotATree, "cut is not connected");
    for (int v = 0; v < nv; ++v) {
        if (s.vertices()[v].faces.size() == 4) continue;
        if (!std::binary_search(verts.begin(), verts.end(), v))
            throw InvalidCutError(InvalidCutKind::MissesCorner,
                                  "cut misses corner " + to_string(s.vertices()[v].point), v);
    }
    return mask;
}

NetLayout layout_from(const SurfaceModel& s, const std::vector<char>& mask, Development d) {
    NetLayout net;
    net.faces = std::move(d.faces);
    net.edges.resize(s.edges().size());
    for (std::size_t e = 0; e < s.edges().size(); ++e) {
        if (mask[e]) {
            net.edges[e] = FoldKind::Cut;
            continue;
        }
        switch (s.edges()[e].shape) {
            case EdgeShape::Convex: net.edges[e] = FoldKind::Mountain; break;
            case EdgeShape::Reflex: net.edges[e] = FoldKind::Valley; break;
            case EdgeShape::Flat: net.edges[e] = FoldKind::Flat; break;
        }
    }
    net.overlaps = find_overlaps(net.faces);
    return net;
}

} // namespace

NetLayout unfold(const SurfaceModel& s, const CutTree& cut) {
    const auto mask = cut_mask(s, cut);
    const SideTable table(s);
    auto d = develop(s, table, mask);
    if (d.placed != static_cast<int>(s.faces().size()))
        throw DevelopmentInconsistent("uncut faces are not connected");
    if (!d.consistent) throw DevelopmentInconsistent("development does not close around an uncut vertex");
    return layout_from(s, mask, std::move(d));
}

bool overlap_check(const NetLayout& net) {
    std::vector<Cell> cells;
    for (const auto& p : net.faces) cells.push_back(p.cell);
    std::sort(cells.begin(), cells.end());
    return std::adjacent_find(cells.begin(), cells.end()) == cells.end();
}

int boundary_length(const SurfaceModel& s, const NetLayout& net) {
    const SideTable table(s);
    int length = 0;
    for (int f = 0; f < static_cast<int>(s.faces().size()); ++f) {
        for (int e = 0; e < 4; ++e) {
            const auto [g, e2] = table.across[f][e];
            const bool joined = net.edges[s.faces()[f].edges[e]] != FoldKind::Cut &&
                                net.vertex_image(g, e2) == net.vertex_image(f, (e + 1) % 4) &&
                                net.vertex_image(g, (e2 + 1) % 4) == net.vertex_image(f, e) &&
                                net.faces[g].cell != net.faces[f].cell;
            length += !joined;
        }
    }
    return length;
}

bool uncut_vertices_close(const SurfaceModel& s, const CutTree& cut, const NetLayout& net) {
    const auto on_cut = cut.vertices();
    for (int v = 0; v < static_cast<int>(s.vertices().size()); ++v) {
        if (std::binary_search(on_cut.begin(), on_cut.end(), v)) continue;
        const auto& faces = s.vertices()[v].faces;
        if (faces.size() != 4) return false;
        std::optional<Point2> image;
        for (int f : faces) {
            const auto& fv = s.faces()[f].vertices;
            const int m = static_cast<int>(std::find(fv.begin(), fv.end(), v) - fv.begin());
            const auto p = net.vertex_image(f, m);
            if (image && *image != p) return false;
            image = p;
        }
    }
    return true;
}

std::vector<Cell> canonical_cells(const NetLayout& net) {
    std::vector<Cell> best;
    for (int t = 0; t < 8; ++t) {
        std::vector<Cell> cells;
        for (const auto& p : net.faces) {
            int i = p.cell.i, j = p.cell.j;
            for (int r = 0; r < t % 4; ++r) std::tie(i, j) = std::make_pair(-j, i);
            if (t >= 4) i = -i;
            cells.push_back({i, j});
        }
        const int mi = std::min_element(cells.begin(), cells.end(), [](auto a, auto b) { return a.i < b.i; })->i;
        const int mj = std::min_element(cells.begin(), cells.end(), [](auto a, auto b) { return a.j < b.j; })->j;
        for (auto& c : cells) c = {c.i - mi, c.j - mj};
        std::sort(cells.begin(), cells.end());
        if (best.empty() || cells < best) best = std::move(cells);
    }
    return best;
}

std::vector<CutTree> spanning_cut_trees(const SkeletonGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges()) edges.emplace_back(g.vertex(a).id, g.vertex(b).id);
    const int n = static_cast<int>(g.size());
    std::vector<CutTree> out;
    std::vector<std::pair<int, int>> chosen;
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);

    // Component labels are copied per branch; fine for the small graphs this is meant for.
    auto rec = [&](auto&& self, std::size_t idx, std::vector<int> labels) -> void {
        if (static_cast<int>(chosen.size()) == n - 1) {
            out.emplace_back(chosen);
            return;
        }
        if (edges.size() - idx < static_cast<std::size_t>(n - 1) - chosen.size()) return;
        const auto [a, b] = g.edges()[idx];
        if (labels[a] != labels[b]) {
            auto merged = labels;
            const int from = labels[b], to = labels[a];
            for (auto& l : merged)
                if (l == from) l = to;
            chosen.push_back(edges[idx]);
            self(self, idx + 1, std::move(merged));
            chosen.pop_back();
        }
        self(self, idx + 1, std::move(labels));
    };
    if (n > 0) rec(rec, 0, comp);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kMovesPerRestart = 60'000;
constexpr std::uint64_t kStagnation = 15'000;
constexpr double kStartTemperature = 1.5;
constexpr double kCooling = 0.9997;
constexpr double kMinTemperature = 0.05;

/// One annealing run over spanning trees of the whole skeleton.
class Annealer {
public:
    Annealer(const SurfaceModel& s, const SideTable& t, std::uint64_t seed)
        : s_(s), t_(t), rng_(seed), in_tree_(s.edges().size(), 0), tree_adj_(s.vertices().size()) {
        std::vector<int> order(s.edges().size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng_);
        std::vector<int> parent(s.vertices().size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int e : order) {
            const auto [a, b] = s.edges()[e].vertices;
            const int ra = find(a), rb = find(b);
            if (ra == rb) {
                outside_.push_back(e);
                continue;
            }
            parent[ra] = rb;
            add_tree_edge(e);
        }
    }

    /// Runs until a nonoverlapping net is found, the move allowance is used
    /// up, the search stagnates, or the shared budget runs out.
    bool run(std::atomic<std::uint64_t>& budget_used, std::uint64_t budget, Clock::time_point deadline,
             const std::atomic<bool>& cancel) {
        int score = evaluate();
        int best = score;
        std::uint64_t since_best = 0;
        double temp = kStartTemperature;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (moves_ = 0; score > 0 && moves_ < kMovesPerRestart && since_best < kStagnation; ++moves_) {
            if (budget_used.fetch_add(1, std::memory_order_relaxed) >= budget) return false;
            if ((moves_ & 255) == 0 && (Clock::now() > deadline || cancel.load(std::memory_order_relaxed))) return false;
            const std::size_t oi = std::uniform_int_distribution<std::size_t>(0, outside_.size() - 1)(rng_);
            const int add = outside_[oi];
            const auto path = tree_path(s_.edges()[add].vertices[0], s_.edges()[add].vertices[1]);
            const int drop = path[std::uniform_int_distribution<std::size_t>(0, path.size() - 1)(rng_)];
            swap_edges(oi, add, drop);
            const int next = evaluate();
            if (next <= score || unit(rng_) < std::exp((score - next) / temp)) {
                score = next;
            } else {
                const std::size_t back = std::find(outside_.begin(), outside_.end(), drop) - outside_.begin();
                swap_edges(back, drop, add);
            }
            if (score < best) {
                best = score;
                since_best = 0;
            } else {
                ++since_best;
            }
            temp = std::max(kMinTemperature, temp * kCooling);
        }
        return score == 0;
    }

    std::uint64_t moves() const { return moves_; }

    CutTree cut() const {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t e = 0; e < in_tree_.size(); ++e)
            if (in_tree_[e]) edges.emplace_back(s_.edges()[e].vertices[0], s_.edges()[e].vertices[1]);
        return CutTree(std::move(edges));
    }

private:
    int evaluate() {
        const auto d = develop(s_, t_, in_tree_);
        return overlap_score(scratch_, d.faces);
    }

    void add_tree_edge(int e) {
        in_tree_[e] = 1;
        const auto [a, b] = s_.edges()[e].vertices;
        tree_adj_[a].push_back({b, e});
        tree_adj_[b].push_back({a, e});
    }
    void remove_tree_edge(int e) {
        in_tree_[e] = 0;
        const auto [a, b] = s_.edges()[e].vertices;
        auto drop = [e](std::vector<std::pair<int, int>>& l) {
            l.erase(std::find_if(l.begin(), l.end(), [e](const auto& p) { return p.second == e; }));
        };
        drop(tree_adj_[a]);
        drop(tree_adj_[b]);
    }
    void swap_edges(std::size_t outside_index, int add, int drop) {
        remove_tree_edge(drop);
        add_tree_edge(add);
        outside_[outside_index] = drop;
    }

    /// Edge ids on the tree path between a and b.
    std::vector<int> tree_path(int a, int b) {
        const std::size_t n = tree_adj_.size();
        prev_.assign(n, {-1, -1});
        std::deque<int> queue{a};
        prev_[a] = {a, -1};
        while (!queue.empty() && prev_[b].first < 0) {
            const int v = queue.front();
            queue.pop_front();
            for (const auto& [u, e] : tree_adj_[v])
                if (prev_[u].first < 0) {
                    prev_[u] = {v, e};
                    queue.push_back(u);
                }
        }
        std::vector<int> path;
        for (int v = b; v != a; v = prev_[v].first) path.push_back(prev_[v].second);
        return path;
    }

    const SurfaceModel& s_;
    const SideTable& t_;
    std::mt19937_64 rng_;
    std::vector<char> in_tree_;
    std::vector<std::vector<std::pair<int, int>>> tree_adj_;
    std::vector<int> outside_;
    std::vector<std::pair<int, int>> prev_;
    std::vector<Cell> scratch_;
    std::uint64_t moves_ = 0;
};

/// Drops cut edges hanging off flat vertices; the net does not change
/// because a flat vertex already develops to a full turn.
CutTree prune_flat_leaves(const SurfaceModel& s, CutTree cut) {
    for (bool changed = true; changed;) {
        changed = false;
        std::map<int, int> degree;
        for (const auto& [a, b] : cut.edges()) {
            ++degree[a];
            ++degree[b];
        }
        std::vector<std::pair<int, int>> kept;
        for (const auto& [a, b] : cut.edges()) {
            const bool leaf_a = degree[a] == 1 && s.vertices()[a].faces.size() == 4;
            const bool leaf_b = degree[b] == 1 && s.vertices()[b].faces.size() == 4;
            if ((leaf_a || leaf_b) && !changed && cut.size() > 1) {
                changed = true;
                continue;
            }
            kept.emplace_back(a, b);
        }
        cut = CutTree(std::move(kept));
    }
    return cut;
}

} // namespace

EdgeUnfoldingResult edge_unfolding_search(const SurfaceModel& s, const SearchConfig& cfg) {
    cfg.validate();
    const auto t0 = Clock::now();
    const auto deadline = t0 + std::min<std::chrono::milliseconds>(cfg.time_budget, std::chrono::hours(24 * 365));
    const SideTable table(s);
    EdgeUnfoldingResult result;

    std::atomic<std::uint64_t> used{0};
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{UINT64_MAX}; // lowest successful restart
    std::atomic<bool> stop{false};
    std::mutex mu;
    struct Outcome {
        bool done = false;
        bool success = false;
        std::uint64_t moves = 0;
        CutTree cut;
    };
    std::map<std::uint64_t, Outcome> outcomes;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t r = next.fetch_add(1);
            if (r > best.load() || stop.load()) return;
            Annealer a(s, table, splitmix64(cfg.seed ^ splitmix64(r)));
            const bool ok = a.run(used, cfg.max_expansions, deadline, stop);
            std::lock_guard lock(mu);
            auto& o = outcomes[r];
            o.moves = a.moves();
            o.success = ok;
            if (ok) {
                o.cut = a.cut();
                if (r < best.load()) best.store(r);
            }
            // A restart cut short by the budget does not count as done.
            o.done = ok || (used.load() < cfg.max_expansions && Clock::now() <= deadline);
            if (!o.done) {
                stop.store(true);
                return;
            }
        }
    };
    const unsigned threads = std::max(1U, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Report as a sequential run would: the first success with all earlier restarts finished.
    for (const auto& [r, o] : outcomes) {
        if (!o.done) break;
        result.moves += o.moves;
        result.restarts = r + 1;
        if (o.success) {
            result.cut = prune_flat_leaves(s, o.cut);
            result.net = unfold(s, *result.cut);
            if (!overlap_check(*result.net)) throw std::logic_error("pruned cut tree produced an overlapping net");
            result.status = SearchStatus::Found;
            result.winning_restart = r;
            break;
        }
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return result;
}

ZipperUnfoldingResult zipper_unfolding_search(const SurfaceModel& s, const SearchConfig& cfg) {
    const auto g = skeleton_graph(s);
    ZipperUnfoldingResult r;
    const auto e = enumerate_zipper_paths(g, cfg, [&](const VertexSequence& path) {
        ++r.paths_tried;
        auto net = unfold(s, CutTree::from_path(path));
        if (!overlap_check(net)) return true;
        r.path = path;
        r.net = std::move(net);
        return false;
    });
    r.stats = e.stats;
    r.certificate = e.certificate;
    r.status = e.status;
    if (e.status == SearchStatus::Absent) r.detail = r.paths_tried == 0 ? "no-cut-path" : "all-paths-overlap";
    return r;
}

} // namespace polycube
