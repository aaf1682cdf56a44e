#include "polycube/parity.hpp"

#include <cstdlib>

namespace polycube {

ParityReport parity_report(const SkeletonGraph& g) {
    ParityReport r;
    for (const auto& v : g.vertices()) (color(v.point) == 0 ? r.count0 : r.count1) += 1;
    r.imbalance = std::abs(r.count0 - r.count1);
    return r;
}

bool is_properly_colored(const SkeletonGraph& g) {
    for (const auto& [a, b] : g.edges())
        if (color(g.vertex(a).point) == color(g.vertex(b).point)) return false;
    return true;
}

std::optional<Obstruction> hampath_obstruction(const SkeletonGraph& g) {
    const auto r = parity_report(g);
    if (r.imbalance <= 1) return std::nullopt;
    Obstruction o;
    o.report = r;
    o.justification = "bipartite graph with colour classes " + std::to_string(r.count0) + " and " +
                      std::to_string(r.count1) + " (imbalance " + std::to_string(r.imbalance) +
                      "); a Hamiltonian path alternates colours, so its classes differ by at most 1";
    return o;
}

} // namespace polycube
