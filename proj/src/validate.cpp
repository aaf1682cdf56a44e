#include "polycube/validate.hpp"

#include <set>
#include <unordered_map>
#include <utility>

namespace polycube {

namespace {

struct Lookup {
    std::unordered_map<int, VertexClass> cls;
    std::set<std::pair<int, int>> edges;

    explicit Lookup(const SkeletonGraph& g) {
        for (const auto& v : g.vertices()) cls.emplace(v.id, v.cls);
        for (const auto& [a, b] : g.edges()) {
            const int ia = g.vertex(a).id, ib = g.vertex(b).id;
            edges.emplace(std::min(ia, ib), std::max(ia, ib));
        }
    }
    bool has_edge(int a, int b) const { return edges.count({std::min(a, b), std::max(a, b)}) > 0; }
};

Verdict fail(std::string m) { return {false, std::move(m)}; }

Verdict check_simple_walk(const Lookup& lk, const VertexSequence& seq) {
    if (seq.ids.empty()) return fail("empty sequence");
    std::set<int> seen;
    for (std::size_t i = 0; i < seq.ids.size(); ++i) {
        const int v = seq.ids[i];
        if (!lk.cls.count(v)) return fail("vertex " + std::to_string(v) + " is not in the graph");
        if (!seen.insert(v).second) return fail("vertex " + std::to_string(v) + " repeats");
        if (i > 0 && !lk.has_edge(seq.ids[i - 1], v))
            return fail("no edge between " + std::to_string(seq.ids[i - 1]) + " and " + std::to_string(v));
    }
    return {};
}

} // namespace

Verdict check_hamiltonian_path(const SkeletonGraph& g, const VertexSequence& seq) {
    const Lookup lk(g);
    if (seq.closed) return fail("sequence is closed");
    if (auto v = check_simple_walk(lk, seq); !v) return v;
    if (seq.ids.size() != lk.cls.size()) return fail("path misses vertices");
    return {};
}

Verdict check_hamiltonian_cycle(const SkeletonGraph& g, const VertexSequence& seq) {
    const Lookup lk(g);
    if (!seq.closed) return fail("sequence is open");
    if (auto v = check_simple_walk(lk, seq); !v) return v;
    if (seq.ids.size() != lk.cls.size()) return fail("cycle misses vertices");
    if (seq.ids.size() < 3 || !lk.has_edge(seq.ids.back(), seq.ids.front())) return fail("cycle does not close");
    return {};
}

Verdict check_zipper_path(const SkeletonGraph& g, const VertexSequence& seq) {
    const Lookup lk(g);
    if (seq.closed) return fail("sequence is closed");
    if (auto v = check_simple_walk(lk, seq); !v) return v;
    std::set<int> on_path(seq.ids.begin(), seq.ids.end());
    for (const auto& [id, c] : lk.cls)
        if (c == VertexClass::Corner && !on_path.count(id)) return fail("corner " + std::to_string(id) + " missed");
    return {};
}

} // namespace polycube
