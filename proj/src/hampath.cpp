#include "polycube/hampath.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "boundary.hpp"
#include "polycube/validate.hpp"

namespace polycube {

void SearchConfig::validate() const {
    if (max_expansions == 0) throw std::invalid_argument("expansion budget must be positive");
    if (time_budget.count() <= 0) throw std::invalid_argument("time budget must be positive");
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::Absent: return "absent";
        case SearchStatus::BudgetExhausted: return "budget";
    }
    return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
    expansions += o.expansions;
    degree_prunes += o.degree_prunes;
    connectivity_prunes += o.connectivity_prunes;
    parity_prunes += o.parity_prunes;
    return *this;
}

bool SearchStats::same_counters(const SearchStats& o) const {
    return expansions == o.expansions && degree_prunes == o.degree_prunes &&
           connectivity_prunes == o.connectivity_prunes && parity_prunes == o.parity_prunes;
}

TooManyFlatVerticesError::TooManyFlatVerticesError(std::size_t flats, std::uint64_t bound)
    : std::runtime_error(std::to_string(flats) + " flat vertices give more than " + std::to_string(bound) +
                         " subsets; use the direct DFS strategy") {}

TreeCycleError::TreeCycleError(TreeCycleErrorKind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class Budget {
public:
    Budget(std::uint64_t max_expansions, Clock::time_point deadline) : max_(max_expansions), deadline_(deadline) {}

    /// False once either budget is spent.
    bool charge() {
        const auto n = used_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_ || ((n & 1023) == 0 && Clock::now() > deadline_)) exhausted_.store(true, std::memory_order_relaxed);
        return !exhausted_.load(std::memory_order_relaxed);
    }
    bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

private:
    std::uint64_t max_;
    Clock::time_point deadline_;
    std::atomic<std::uint64_t> used_{0};
    std::atomic<bool> exhausted_{false};
};

enum class Mode { Path, Cycle };

struct Problem {
    Mode mode = Mode::Path;
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<char> required;
    std::vector<int> color;
    std::vector<int> ids;
    bool prune_parity = true;
    bool prune_degree = true;
    bool prune_connectivity = true;
};

Problem make_problem(const SkeletonGraph& g, Mode mode, bool corners_only, const SearchConfig& cfg) {
    Problem p;
    p.mode = mode;
    p.n = static_cast<int>(g.size());
    p.adj.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        p.adj[i] = g.neighbors(i);
        p.required.push_back(!corners_only || g.vertex(i).cls == VertexClass::Corner);
        p.color.push_back(color(g.vertex(i).point));
        p.ids.push_back(g.vertex(i).id);
    }
    p.prune_parity = cfg.prune_parity;
    p.prune_degree = cfg.prune_degree;
    p.prune_connectivity = cfg.prune_connectivity;
    return p;
}

using Visitor = std::function<bool(const std::vector<int>&)>; // local indices; false stops

/// Depth-first extension of a path (or cycle) from a fixed start.
class Dfs {
public:
    Dfs(const Problem& p, Budget& budget, const std::atomic<bool>* cancel)
        : p_(p), budget_(budget), cancel_(cancel), visited_(p.n, 0), avail_(p.n, 0), seen_(p.n, 0) {}

    enum class Outcome { Stopped, Exhausted, Aborted };

    Outcome run(int start, const Visitor& visit) {
        visit_ = &visit;
        aborted_ = stopped_ = false;
        start_ = start;
        for (int v = 0; v < p_.n; ++v) avail_[v] = static_cast<int>(p_.adj[v].size());
        std::fill(visited_.begin(), visited_.end(), 0);
        zero_ = one_ = below_two_ = 0;
        req_left_ = 0;
        unvisited_req_[0] = unvisited_req_[1] = unvisited_opt_[0] = unvisited_opt_[1] = 0;
        visited_count_[0] = visited_count_[1] = 0;
        for (int v = 0; v < p_.n; ++v) {
            if (p_.required[v]) {
                ++req_left_;
                ++unvisited_req_[p_.color[v]];
            } else {
                ++unvisited_opt_[p_.color[v]];
            }
            classify(v, +1);
        }
        path_.clear();
        enter(start);
        if (!budget_.charge()) return Outcome::Aborted;
        ++stats.expansions;
        if (complete()) {
            report();
        } else if (!pruned()) {
            extend();
        }
        leave(start);
        if (aborted_) return Outcome::Aborted;
        return stopped_ ? Outcome::Stopped : Outcome::Exhausted;
    }

    SearchStats stats;

private:
    // Bookkeeping of unvisited vertices by available-degree bucket.
    void classify(int v, int sign) {
        if (visited_[v]) return;
        const int a = avail_[v];
        if (p_.mode == Mode::Cycle) {
            if (a < 2) below_two_ += sign;
            return;
        }
        if (!p_.required[v]) return;
        if (a == 0) zero_ += sign;
        if (a == 1) one_ += sign;
    }
    void dec(int v) {
        classify(v, -1);
        --avail_[v];
        classify(v, +1);
    }
    void inc(int v) {
        classify(v, -1);
        ++avail_[v];
        classify(v, +1);
    }
    void enter(int v) {
        classify(v, -1);
        visited_[v] = 1;
        path_.push_back(v);
        ++visited_count_[p_.color[v]];
        if (p_.required[v]) {
            --req_left_;
            --unvisited_req_[p_.color[v]];
        } else {
            --unvisited_opt_[p_.color[v]];
        }
    }
    void leave(int v) {
        if (p_.required[v]) {
            ++req_left_;
            ++unvisited_req_[p_.color[v]];
        } else {
            ++unvisited_opt_[p_.color[v]];
        }
        --visited_count_[p_.color[v]];
        path_.pop_back();
        visited_[v] = 0;
        classify(v, +1);
    }

    bool complete() const {
        if (req_left_ != 0) return false;
        if (p_.mode == Mode::Path) return true;
        const int head = path_.back();
        return p_.n >= 3 && std::binary_search(p_.adj[head].begin(), p_.adj[head].end(), start_);
    }

    void report() {
        if (!(*visit_)(path_)) stopped_ = true;
    }

    bool pruned() {
        if (p_.prune_degree) {
            if (p_.mode == Mode::Path ? (zero_ > 0 || one_ > 1) : below_two_ > 0) {
                ++stats.degree_prunes;
                return true;
            }
        }
        if (p_.prune_parity && p_.mode == Mode::Path) {
            // Final colour counts must differ by 0, or by 1 in favour of the start colour.
            const int s = p_.color[start_], o = 1 - s;
            const int d = visited_count_[s] + unvisited_req_[s] - visited_count_[o] - unvisited_req_[o];
            if (d - unvisited_opt_[o] > 1 || d + unvisited_opt_[s] < 0) {
                ++stats.parity_prunes;
                return true;
            }
        }
        if (p_.prune_connectivity && !reaches_all_required()) {
            ++stats.connectivity_prunes;
            return true;
        }
        return false;
    }

    bool reaches_all_required() {
        const int head = path_.back();
        std::fill(seen_.begin(), seen_.end(), 0);
        stack_.clear();
        stack_.push_back(head);
        seen_[head] = 1;
        int reached = 0;
        while (!stack_.empty()) {
            const int v = stack_.back();
            stack_.pop_back();
            for (int u : p_.adj[v]) {
                if (visited_[u] || seen_[u]) continue;
                seen_[u] = 1;
                if (p_.required[u]) ++reached;
                stack_.push_back(u);
            }
        }
        return reached == req_left_;
    }

    void extend() {
        const int head = path_.back();
        // Fewest remaining options first; ties by index.
        std::vector<std::pair<int, int>> order;
        for (int u : p_.adj[head])
            if (!visited_[u]) order.emplace_back(avail_[u], u);
        std::sort(order.begin(), order.end());
        const bool keep_head_available = p_.mode == Mode::Cycle && head == start_;
        for (const auto& [a, w] : order) {
            if (cancel_ && cancel_->load(std::memory_order_relaxed)) {
                aborted_ = true;
                return;
            }
            if (!budget_.charge()) {
                aborted_ = true;
                return;
            }
            ++stats.expansions;
            enter(w);
            if (!keep_head_available)
                for (int u : p_.adj[head])
                    if (!visited_[u]) dec(u);
            if (complete())
                report();
            else if (!pruned())
                extend();
            if (!keep_head_available)
                for (int u : p_.adj[head])
                    if (!visited_[u]) inc(u);
            leave(w);
            if (aborted_ || stopped_) return;
        }
    }

    const Problem& p_;
    Budget& budget_;
    const std::atomic<bool>* cancel_;
    const Visitor* visit_ = nullptr;
    std::vector<char> visited_;
    std::vector<int> avail_;
    std::vector<char> seen_;
    std::vector<int> stack_;
    std::vector<int> path_;
    int start_ = 0;
    int zero_ = 0, one_ = 0, below_two_ = 0;
    int req_left_ = 0;
    int unvisited_req_[2]{};
    int unvisited_opt_[2]{};
    int visited_count_[2]{};
    bool aborted_ = false;
    bool stopped_ = false;
};

struct StartsOutcome {
    SearchStatus status = SearchStatus::Absent;
    std::vector<int> path; // local indices
    SearchStats stats;
};

/// Runs the DFS from each start in order and reports the first path found.
/// With several threads, starts are claimed dynamically, but the reported
/// path and counters are those of the lowest-indexed successful start, summed
/// over all starts before it, exactly as a single thread would report.
StartsOutcome search_from_starts(const Problem& p, const std::vector<int>& starts, const SearchConfig& cfg,
                                 Clock::time_point deadline) {
    Budget budget(cfg.max_expansions, deadline);
    const std::size_t k = starts.size();
    struct Slot {
        bool done = false;
        Dfs::Outcome outcome = Dfs::Outcome::Exhausted;
        std::vector<int> path;
        SearchStats stats;
    };
    std::vector<Slot> slots(k);

    auto run_one = [&](std::size_t i, const std::atomic<bool>* cancel) {
        Dfs dfs(p, budget, cancel);
        std::vector<int> found;
        const Visitor take_first = [&](const std::vector<int>& path) {
            found = path;
            return false;
        };
        slots[i].outcome = dfs.run(starts[i], take_first);
        slots[i].path = std::move(found);
        slots[i].stats = dfs.stats;
        slots[i].done = true;
    };

    const unsigned threads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(k)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < k; ++i) {
            run_one(i, nullptr);
            if (slots[i].outcome != Dfs::Outcome::Exhausted) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{k}; // lowest start index that found a path
        std::vector<std::unique_ptr<std::atomic<bool>>> cancel;
        for (std::size_t i = 0; i < k; ++i) cancel.push_back(std::make_unique<std::atomic<bool>>(false));
        std::mutex mu;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= k || i > best.load()) return;
                run_one(i, cancel[i].get());
                if (slots[i].outcome == Dfs::Outcome::Stopped) {
                    std::lock_guard lock(mu);
                    if (i < best.load()) {
                        best.store(i);
                        for (std::size_t j = i + 1; j < k; ++j) cancel[j]->store(true);
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    StartsOutcome out;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& s = slots[i];
        if (!s.done) break;
        if (s.outcome == Dfs::Outcome::Aborted && !budget.exhausted()) break; // cancelled after a lower start won
        out.stats += s.stats;
        if (s.outcome == Dfs::Outcome::Stopped) {
            out.status = SearchStatus::Found;
            out.path = s.path;
            return out;
        }
        if (s.outcome == Dfs::Outcome::Aborted) {
            out.status = SearchStatus::BudgetExhausted;
            return out;
        }
    }
    if (budget.exhausted()) out.status = SearchStatus::BudgetExhausted;
    return out;
}

bool connected(const SkeletonGraph& g, const std::vector<char>& include) {
    const int n = static_cast<int>(g.size());
    int first = -1, total = 0;
    for (int i = 0; i < n; ++i)
        if (include[i]) {
            ++total;
            if (first < 0) first = i;
        }
    if (total <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{first};
    seen[first] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if (include[u] && !seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    return reached == total;
}

VertexSequence to_ids(const Problem& p, const std::vector<int>& path, bool closed) {
    VertexSequence seq;
    seq.closed = closed;
    for (int v : path) seq.ids.push_back(p.ids[v]);
    return seq;
}

Clock::time_point deadline_of(const SearchConfig& cfg, Clock::time_point t0) {
    const auto cap = std::chrono::hours(24 * 365);
    return t0 + std::min<std::chrono::milliseconds>(cfg.time_budget, cap);
}

} // namespace

HamSearchResult find_hamiltonian_path(const SkeletonGraph& g, const SearchConfig& cfg) {
    cfg.validate();
    const auto t0 = Clock::now();
    HamSearchResult r;
    const int n = static_cast<int>(g.size());
    auto finish = [&](HamSearchResult res) {
        res.stats.elapsed_ms = ms_since(t0);
        return res;
    };
    if (n == 0) {
        r.reason = "empty";
        return finish(r);
    }
    const auto parity = parity_report(g);
    if (cfg.prune_parity) {
        if (auto ob = hampath_obstruction(g)) {
            r.certificate = ob;
            r.reason = "parity";
            return finish(r);
        }
    }
    if (cfg.prune_connectivity && !connected(g, std::vector<char>(n, 1))) {
        r.reason = "disconnected";
        return finish(r);
    }
    std::vector<int> leaves;
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 1) leaves.push_back(i);
    if (cfg.prune_degree && n > 1) {
        bool isolated = false;
        for (int i = 0; i < n; ++i) isolated = isolated || g.degree(i) == 0;
        if (isolated || leaves.size() > 2) {
            r.reason = "degree";
            return finish(r);
        }
    }

    std::vector<int> starts;
    for (int i = 0; i < n; ++i) {
        // With one extra vertex of a colour, both ends carry that colour.
        if (cfg.prune_parity && parity.imbalance == 1 &&
            color(g.vertex(i).point) != (parity.count0 > parity.count1 ? 0 : 1))
            continue;
        starts.push_back(i);
    }
    if (cfg.prune_degree && !leaves.empty()) {
        // Every leaf is an endpoint; starting from the first one suffices.
        const bool allowed = std::find(starts.begin(), starts.end(), leaves.front()) != starts.end();
        starts = allowed ? std::vector<int>{leaves.front()} : std::vector<int>{};
    }

    const auto problem = make_problem(g, Mode::Path, false, cfg);
    const auto out = search_from_starts(problem, starts, cfg, deadline_of(cfg, t0));
    r.status = out.status;
    r.stats = out.stats;
    if (out.status == SearchStatus::Found) {
        r.sequence = to_ids(problem, out.path, false);
        if (auto v = check_hamiltonian_path(g, *r.sequence); !v)
            throw std::logic_error("search produced an invalid Hamiltonian path: " + v.message);
    } else if (out.status == SearchStatus::Absent) {
        r.reason = "exhaustive";
    }
    return finish(r);
}

HamSearchResult find_hamiltonian_cycle(const SkeletonGraph& g, const SearchConfig& cfg) {
    cfg.validate();
    const auto t0 = Clock::now();
    HamSearchResult r;
    const int n = static_cast<int>(g.size());
    auto finish = [&](HamSearchResult res) {
        res.stats.elapsed_ms = ms_since(t0);
        return res;
    };
    if (n < 3) {
        r.reason = "degree";
        return finish(r);
    }
    if (cfg.prune_degree) {
        for (int i = 0; i < n; ++i)
            if (g.degree(i) < 2) {
                r.reason = "degree";
                return finish(r);
            }
    }
    if (cfg.prune_parity) {
        // A cycle in a bipartite graph alternates colours, so the classes are equal.
        if (const auto rep = parity_report(g); rep.imbalance != 0) {
            r.certificate = hampath_obstruction(g);
            r.reason = "parity";
            return finish(r);
        }
    }
    if (cfg.prune_connectivity && !connected(g, std::vector<char>(n, 1))) {
        r.reason = "disconnected";
        return finish(r);
    }
    const auto problem = make_problem(g, Mode::Cycle, false, cfg);
    auto single = cfg;
    single.threads = 1; // one fixed start
    const auto out = search_from_starts(problem, {0}, single, deadline_of(cfg, t0));
    r.status = out.status;
    r.stats = out.stats;
    if (out.status == SearchStatus::Found) {
        r.sequence = to_ids(problem, out.path, true);
        if (auto v = check_hamiltonian_cycle(g, *r.sequence); !v)
            throw std::logic_error("search produced an invalid Hamiltonian cycle: " + v.message);
    } else if (out.status == SearchStatus::Absent) {
        r.reason = "exhaustive";
    }
    return finish(r);
}

namespace {

/// Smallest colour imbalance reachable by adding some of the flat vertices
/// to all corners; a certificate when it exceeds one.
std::optional<Obstruction> corner_parity_obstruction(const SkeletonGraph& g) {
    int corners[2]{}, flats[2]{};
    for (const auto& v : g.vertices()) ++(v.cls == VertexClass::Corner ? corners : flats)[color(v.point)];
    int best_f0 = 0, best_f1 = 0, best = -1;
    for (int f0 = 0; f0 <= flats[0]; ++f0) {
        // For fixed f0 the best f1 is the one closest to balancing.
        int f1 = std::clamp(corners[0] + f0 - corners[1], 0, flats[1]);
        const int imb = std::abs(corners[0] + f0 - corners[1] - f1);
        if (best < 0 || imb < best) {
            best = imb;
            best_f0 = f0;
            best_f1 = f1;
        }
    }
    if (best <= 1) return std::nullopt;
    Obstruction o;
    o.report = {corners[0] + best_f0, corners[1] + best_f1, best};
    o.justification = "corner vertices have colour classes " + std::to_string(corners[0]) + " and " +
                      std::to_string(corners[1]) + "; even the best choice of the " +
                      std::to_string(flats[0] + flats[1]) + " optional flat vertices leaves imbalance " +
                      std::to_string(best) + " > 1, so no alternating path covers every corner";
    return o;
}

std::vector<int> corner_starts(const Problem& p) {
    std::vector<int> starts;
    for (int i = 0; i < p.n; ++i)
        if (p.required[i]) starts.push_back(i);
    return starts;
}

} // namespace

ZipperSearchResult zipper_path_search(const SkeletonGraph& g, const SearchConfig& cfg, ZipperStrategy strategy) {
    cfg.validate();
    const auto t0 = Clock::now();
    ZipperSearchResult r;

    if (strategy == ZipperStrategy::DirectDFS) {
        if (cfg.prune_parity) {
            if (auto ob = corner_parity_obstruction(g)) {
                r.certificate = ob;
                r.reason = "parity";
                r.stats.elapsed_ms = ms_since(t0);
                return r;
            }
        }
        const auto problem = make_problem(g, Mode::Path, true, cfg);
        const auto starts = corner_starts(problem);
        if (starts.empty()) {
            r.reason = "no corners";
            r.stats.elapsed_ms = ms_since(t0);
            return r;
        }
        const auto out = search_from_starts(problem, starts, cfg, deadline_of(cfg, t0));
        r.status = out.status;
        r.stats = out.stats;
        if (out.status == SearchStatus::Found) {
            r.path = to_ids(problem, out.path, false);
            if (auto v = check_zipper_path(g, *r.path); !v)
                throw std::logic_error("search produced an invalid zipper path: " + v.message);
        } else if (out.status == SearchStatus::Absent) {
            r.reason = "exhaustive";
        }
        r.stats.elapsed_ms = ms_since(t0);
        return r;
    }

    const auto flats = g.flat_locals();
    const std::size_t f = flats.size();
    if (f >= 63 || (std::uint64_t{1} << f) > cfg.max_flat_subsets) throw TooManyFlatVerticesError(f, cfg.max_flat_subsets);

    std::map<int, int> bit_of; // flat id -> bit
    for (std::size_t i = 0; i < f; ++i) bit_of[g.vertex(flats[i]).id] = static_cast<int>(i);
    auto apply = [&](const std::map<int, int>& perm, std::uint64_t mask) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < f; ++i) {
            if (!(mask >> i & 1)) continue;
            const int id = g.vertex(flats[i]).id;
            auto it = perm.find(id);
            const int image = it == perm.end() ? id : it->second;
            auto b = bit_of.find(image);
            if (b == bit_of.end()) throw std::invalid_argument("automorphism maps a flat vertex to a non-flat vertex");
            out |= std::uint64_t{1} << b->second;
        }
        return out;
    };
    auto canonical = [&](std::uint64_t mask) {
        if (cfg.automorphisms.empty()) return true;
        std::vector<std::uint64_t> orbit{mask};
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (const auto& perm : cfg.automorphisms) {
                const auto img = apply(perm, orbit[i]);
                if (img < mask) return false;
                if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
            }
        return true;
    };

    // Cases in the order "all flats used", "one dropped", ... "none used".
    std::vector<std::uint64_t> masks(std::size_t{1} << f);
    std::iota(masks.begin(), masks.end(), std::uint64_t{0});
    std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) > std::popcount(b);
    });

    const auto deadline = deadline_of(cfg, t0);
    for (const auto mask : masks) {
        ZipperCase c;
        std::set<int> drop;
        for (std::size_t i = 0; i < f; ++i) {
            const int id = g.vertex(flats[i]).id;
            if (mask >> i & 1)
                c.included_flats.push_back(id);
            else
                drop.insert(id);
        }
        if (!canonical(mask)) {
            c.skipped_by_symmetry = true;
            r.cases.push_back(std::move(c));
            continue;
        }
        auto sub_cfg = cfg;
        const auto now = Clock::now();
        if (now >= deadline || r.stats.expansions >= cfg.max_expansions) {
            r.status = SearchStatus::BudgetExhausted;
            break;
        }
        sub_cfg.time_budget = std::max(std::chrono::milliseconds(1),
                                       std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now));
        sub_cfg.max_expansions = cfg.max_expansions - r.stats.expansions;
        const auto sub = delete_vertices(g, drop);
        c.result = find_hamiltonian_path(sub, sub_cfg);
        r.stats += c.result.stats;
        const auto status = c.result.status;
        std::optional<VertexSequence> path = c.result.sequence;
        r.cases.push_back(std::move(c));
        if (status == SearchStatus::Found) {
            r.status = SearchStatus::Found;
            r.path = path;
            if (auto v = check_zipper_path(g, *r.path); !v)
                throw std::logic_error("search produced an invalid zipper path: " + v.message);
            break;
        }
        if (status == SearchStatus::BudgetExhausted) {
            r.status = SearchStatus::BudgetExhausted;
            break;
        }
    }
    if (r.status == SearchStatus::Absent) {
        r.reason = "all-cases-absent";
        if (f == 0 && !r.cases.empty()) r.certificate = r.cases.front().result.certificate;
    }
    r.stats.elapsed_ms = ms_since(t0);
    return r;
}

ZipperEnumeration enumerate_zipper_paths(const SkeletonGraph& g, const SearchConfig& cfg,
                                         const std::function<bool(const VertexSequence&)>& visit) {
    cfg.validate();
    const auto t0 = Clock::now();
    ZipperEnumeration out;
    if (cfg.prune_parity) {
        if (auto ob = corner_parity_obstruction(g)) {
            out.certificate = ob;
            out.stats.elapsed_ms = ms_since(t0);
            return out;
        }
    }
    const auto problem = make_problem(g, Mode::Path, true, cfg);
    Budget budget(cfg.max_expansions, deadline_of(cfg, t0));
    bool stopped = false;
    const Visitor each = [&](const std::vector<int>& path) {
        // Each undirected path is met from both ends; keep one orientation.
        if (problem.ids[path.front()] > problem.ids[path.back()]) return true;
        ++out.paths;
        if (!visit(to_ids(problem, path, false))) {
            stopped = true;
            return false;
        }
        return true;
    };
    for (int s : corner_starts(problem)) {
        Dfs dfs(problem, budget, nullptr);
        const auto outcome = dfs.run(s, each);
        out.stats += dfs.stats;
        if (outcome == Dfs::Outcome::Aborted) {
            out.status = SearchStatus::BudgetExhausted;
            break;
        }
        if (stopped) {
            out.status = SearchStatus::Found;
            break;
        }
    }
    out.stats.elapsed_ms = ms_since(t0);
    return out;
}

namespace {

using Cycle = std::vector<Point3>;

class CycleEdges {
public:
    explicit CycleEdges(const Cycle& c) : c_(c) {
        for (std::size_t i = 0; i < c.size(); ++i) pos_[c[i]] = i;
    }
    bool has(const Point3& a, const Point3& b) const {
        auto ia = pos_.find(a), ib = pos_.find(b);
        if (ia == pos_.end() || ib == pos_.end()) return false;
        const std::size_t n = c_.size();
        return (ia->second + 1) % n == ib->second || (ib->second + 1) % n == ia->second;
    }
    std::optional<std::size_t> position(const Point3& p) const {
        auto it = pos_.find(p);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }
    int count_on(const std::array<Point3, 4>& face) const {
        int k = 0;
        for (int i = 0; i < 4; ++i) k += has(face[i], face[(i + 1) % 4]);
        return k;
    }

private:
    const Cycle& c_;
    std::unordered_map<Point3, std::size_t, Point3Hash> pos_;
};

[[noreturn]] void broken(const std::string& what) {
    throw TreeCycleError(TreeCycleErrorKind::InternalInvariantBroken, what);
}

/// Parent-first order: repeatedly strip the smallest-index leaf, then reverse.
std::vector<std::pair<int, int>> build_order(const DualGraph& dual) {
    const int n = static_cast<int>(dual.nodes.size());
    std::vector<std::set<int>> adj(n);
    for (const auto& [a, b] : dual.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<char> removed(n, 0);
    std::vector<std::pair<int, int>> stripped; // (cube, neighbour at removal)
    for (int step = 0; step + 1 < n; ++step) {
        int leaf = -1;
        for (int i = 0; i < n && leaf < 0; ++i)
            if (!removed[i] && adj[i].size() == 1) leaf = i;
        if (leaf < 0) broken("dual graph has no leaf");
        const int parent = *adj[leaf].begin();
        adj[parent].erase(leaf);
        adj[leaf].clear();
        removed[leaf] = 1;
        stripped.emplace_back(leaf, parent);
    }
    int root = 0;
    while (removed[root]) ++root;
    std::vector<std::pair<int, int>> order{{root, -1}};
    for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) order.push_back(*it);
    return order;
}

Direction direction_between(const CubeCoord& from, const CubeCoord& to) {
    const Point3 d = to - from;
    for (const auto& dir : kDirections)
        if (dir.offset() == d) return dir;
    broken("glued cubes are not face-adjacent");
}

struct Gluing {
    CubeCoord cube;
    CubeCoord parent;
    Direction d;
    std::array<Point3, 4> f; // parent's face towards cube, CCW
    std::array<Point3, 4> q; // far corners, q[i] = f[i] + d
};

/// Splices gluings[k..] into the cycle. Each gluing may replace any cycle
/// edge of its face; edges are tried best first and undone when a later
/// face is left without cycle edges.
class Splicer {
public:
    Splicer(std::vector<Gluing> gluings, std::vector<CubeCoord> built, Cycle cycle)
        : gluings_(std::move(gluings)), built_(std::move(built)), cycle_(std::move(cycle)) {}

    bool run(std::size_t k) {
        if (k == gluings_.size()) return true;
        if (++steps_ > kMaxSteps) broken("splice backtracking limit reached");
        const Gluing& gl = gluings_[k];
        std::vector<std::pair<int, int>> candidates; // (-score, edge index)
        int mask = 0;
        {
            const CycleEdges edges(cycle_);
            for (const auto& v : gl.q)
                if (edges.position(v)) broken("far corner " + to_string(v) + " is already on the cycle");
            for (int i = 0; i < 4; ++i)
                if (edges.has(gl.f[i], gl.f[(i + 1) % 4])) mask |= 1 << i;
            if (mask == 0) return false;
            built_.insert(std::upper_bound(built_.begin(), built_.end(), gl.cube), gl.cube);
            Point3 face_sum{};
            for (const auto& v : gl.f) face_sum = face_sum + v;
            for (int i = 0; i < 4; ++i) {
                if (!(mask >> i & 1)) continue;
                // The other face on this edge once the cube is glued.
                const Point3 edge_sum = gl.f[i] + gl.f[(i + 1) % 4];
                const Point3 w = edge_sum + edge_sum - face_sum;
                Direction t{};
                for (const auto& dir : kDirections)
                    if (dir.offset() + dir.offset() == w) t = dir;
                const CubeCoord side = gl.parent + t.offset();
                const auto g = detail::sorted_contains(built_, side) ? detail::face_corners(side, gl.d)
                                                                      : detail::face_corners(gl.parent, t);
                candidates.emplace_back(-edges.count_on(g), i);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        for (const auto& [neg_score, i] : candidates) {
            const std::size_t at = splice(gl, i);
            if (run(k + 1)) {
                patterns_.push_back(mask);
                return true;
            }
            cycle_.erase(cycle_.begin() + static_cast<std::ptrdiff_t>(at), cycle_.begin() + static_cast<std::ptrdiff_t>(at) + 4);
        }
        built_.erase(std::lower_bound(built_.begin(), built_.end(), gl.cube));
        return false;
    }

    const Cycle& cycle() const { return cycle_; }
    /// Face masks of the successful splices, last gluing first.
    const std::vector<int>& patterns() const { return patterns_; }

private:
    static constexpr std::uint64_t kMaxSteps = 1'000'000;

    /// Replaces cycle edge f[i]f[i+1] by the long way round the far face.
    /// Returns the position of the first inserted vertex.
    std::size_t splice(const Gluing& gl, int i) {
        const int j = (i + 1) % 4;
        std::array<Point3, 4> detour{gl.q[i], gl.q[(i + 3) % 4], gl.q[(i + 2) % 4], gl.q[j]};
        const std::size_t n = cycle_.size();
        const auto a = static_cast<std::size_t>(std::find(cycle_.begin(), cycle_.end(), gl.f[i]) - cycle_.begin());
        const auto b = static_cast<std::size_t>(std::find(cycle_.begin(), cycle_.end(), gl.f[j]) - cycle_.begin());
        std::size_t after = a;
        if ((a + 1) % n != b) {
            std::reverse(detour.begin(), detour.end());
            after = b;
        }
        cycle_.insert(cycle_.begin() + static_cast<std::ptrdiff_t>(after + 1), detour.begin(), detour.end());
        return after + 1;
    }

    std::vector<Gluing> gluings_;
    std::vector<CubeCoord> built_;
    Cycle cycle_;
    std::vector<int> patterns_;
    std::uint64_t steps_ = 0;
};

} // namespace

TreeCycleResult tree_hamiltonian_cycle(const Polycube& p) {
    if (!is_polycube_tree(p)) throw TreeCycleError(TreeCycleErrorKind::NotATree, "dual graph is not a tree");
    const auto dual = dual_graph(p);
    const auto order = build_order(dual);

    const CubeCoord root = dual.nodes[order.front().first];
    Cycle cycle;
    for (const Point3 off : {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{1, 1, 0}, Point3{0, 1, 0}, Point3{0, 1, 1},
                             Point3{1, 1, 1}, Point3{1, 0, 1}, Point3{0, 0, 1}})
        cycle.push_back(root + off);

    std::vector<Gluing> gluings;
    for (std::size_t k = 1; k < order.size(); ++k) {
        Gluing gl;
        gl.cube = dual.nodes[order[k].first];
        gl.parent = dual.nodes[order[k].second];
        gl.d = direction_between(gl.parent, gl.cube);
        gl.f = detail::face_corners(gl.parent, gl.d);
        for (int i = 0; i < 4; ++i) gl.q[i] = gl.f[i] + gl.d.offset();
        gluings.push_back(gl);
    }
    Splicer splicer(std::move(gluings), {root}, std::move(cycle));
    if (!splicer.run(0)) broken("no splice sequence keeps a cycle edge on every glued face");

    TreeCycleResult result;
    for (const int mask : splicer.patterns()) {
        switch (std::popcount(static_cast<unsigned>(mask))) {
            case 3: ++result.patterns.three_edges; break;
            case 2: ++((mask == 0b0101 || mask == 0b1010) ? result.patterns.two_opposite : result.patterns.two_adjacent); break;
            case 1: ++result.patterns.one_edge; break;
            default: broken("glued face carries all four cycle edges");
        }
    }
    cycle = splicer.cycle();

    const auto surface = extract_surface(p);
    const auto g = skeleton_graph(surface);
    result.cycle.closed = true;
    for (const auto& v : cycle) {
        const int id = surface.find_vertex(v);
        if (id < 0) broken("cycle vertex " + to_string(v) + " is not on the surface");
        result.cycle.ids.push_back(id);
    }
    if (auto v = check_hamiltonian_cycle(g, result.cycle); !v) broken("constructed cycle rejected: " + v.message);
    return result;
}

} // namespace polycube
