#pragma once

#include <string>

#include "polycube/hampath.hpp"
#include "polycube/surface.hpp"

namespace polycube {

/// Independent checks for search output. These deliberately rebuild their
/// own edge lookup from g.edges() instead of using the search code paths.
struct Verdict {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

Verdict check_hamiltonian_path(const SkeletonGraph& g, const VertexSequence& seq);
Verdict check_hamiltonian_cycle(const SkeletonGraph& g, const VertexSequence& seq);
/// Simple path whose vertex set contains every corner vertex of g.
Verdict check_zipper_path(const SkeletonGraph& g, const VertexSequence& seq);

} // namespace polycube
