#pragma once

#include <optional>
#include <string>

#include "polycube/geometry.hpp"
#include "polycube/surface.hpp"

namespace polycube {

/// Coordinate-sum parity of a lattice point. Adjacent lattice points always
/// differ, which makes every skeleton bipartite.
constexpr int color(const Point3& p) { return ((p.x + p.y + p.z) % 2 + 2) % 2; }

struct ParityReport {
    int count0 = 0;
    int count1 = 0;
    int imbalance = 0;
    friend bool operator==(const ParityReport&, const ParityReport&) = default;
};

ParityReport parity_report(const SkeletonGraph& g);

/// True when every edge of g joins differently coloured vertices.
bool is_properly_colored(const SkeletonGraph& g);

enum class ObstructionKind { ParityImbalance };

/// Certificate that g has no Hamiltonian path. Only issued when the colour
/// classes differ by more than one.
struct Obstruction {
    ObstructionKind kind = ObstructionKind::ParityImbalance;
    ParityReport report;
    std::string justification;
};

std::optional<Obstruction> hampath_obstruction(const SkeletonGraph& g);

} // namespace polycube
