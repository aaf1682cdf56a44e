#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycube/lattice.hpp"
#include "polycube/parity.hpp"
#include "polycube/surface.hpp"

namespace polycube {

/// Ordered skeleton vertex ids. A closed sequence is a cycle: the last
/// vertex is adjacent to the first.
struct VertexSequence {
    std::vector<int> ids;
    bool closed = false;
    friend bool operator==(const VertexSequence&, const VertexSequence&) = default;
};

struct SearchConfig {
    std::uint64_t max_expansions = 20'000'000'000ULL;
    std::chrono::milliseconds time_budget{std::chrono::minutes(10)};
    std::uint64_t seed = 0;
    bool prune_parity = true;
    bool prune_degree = true;
    bool prune_connectivity = true;
    unsigned threads = 1;
    /// FlatSubsets refuses when 2^|flats| exceeds this.
    std::uint64_t max_flat_subsets = 1U << 16;
    /// Optional automorphisms (vertex id -> vertex id) used to skip
    /// equivalent flat subsets. Empty means no symmetry reduction.
    std::vector<std::map<int, int>> automorphisms;

    /// Throws std::invalid_argument unless both budgets are positive.
    void validate() const;
};

enum class SearchStatus { Found, Absent, BudgetExhausted };

std::string to_string(SearchStatus s);

/// Counters are deterministic for a given input and config; elapsed_ms is
/// wall time and is not.
struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t degree_prunes = 0;
    std::uint64_t connectivity_prunes = 0;
    std::uint64_t parity_prunes = 0;
    double elapsed_ms = 0.0;

    SearchStats& operator+=(const SearchStats& o);
    bool same_counters(const SearchStats& o) const;
};

struct HamSearchResult {
    SearchStatus status = SearchStatus::Absent;
    std::optional<VertexSequence> sequence;
    std::optional<Obstruction> certificate;
    /// How an Absent result was decided: "parity", "disconnected", "degree",
    /// "exhaustive"; empty otherwise.
    std::string reason;
    SearchStats stats;
};

HamSearchResult find_hamiltonian_path(const SkeletonGraph& g, const SearchConfig& cfg);
HamSearchResult find_hamiltonian_cycle(const SkeletonGraph& g, const SearchConfig& cfg);

enum class ZipperStrategy { FlatSubsets, DirectDFS };

class TooManyFlatVerticesError : public std::runtime_error {
public:
    TooManyFlatVerticesError(std::size_t flats, std::uint64_t bound);
};

/// One flat-vertex subset examined by the FlatSubsets strategy.
struct ZipperCase {
    std::vector<int> included_flats; // vertex ids
    bool skipped_by_symmetry = false;
    HamSearchResult result;
};

struct ZipperSearchResult {
    SearchStatus status = SearchStatus::Absent;
    std::optional<VertexSequence> path;
    std::optional<Obstruction> certificate;
    std::string reason;
    std::vector<ZipperCase> cases; // FlatSubsets only
    SearchStats stats;
};

/// Looks for a simple path through every corner vertex; flat vertices may
/// be used at most once or skipped.
ZipperSearchResult zipper_path_search(const SkeletonGraph& g, const SearchConfig& cfg, ZipperStrategy strategy);

/// Calls visit for every zipper path (each undirected path once, oriented
/// so its first id is smaller than its last) until visit returns false.
/// Returns Found if visit stopped the enumeration, Absent when every path
/// was produced, BudgetExhausted otherwise.
struct ZipperEnumeration {
    SearchStatus status = SearchStatus::Absent;
    std::uint64_t paths = 0;
    std::optional<Obstruction> certificate;
    SearchStats stats;
};
ZipperEnumeration enumerate_zipper_paths(const SkeletonGraph& g, const SearchConfig& cfg,
                                         const std::function<bool(const VertexSequence&)>& visit);

enum class TreeCycleErrorKind { NotATree, InternalInvariantBroken };

class TreeCycleError : public std::runtime_error {
public:
    TreeCycleError(TreeCycleErrorKind kind, std::string message);
    TreeCycleErrorKind kind() const noexcept { return kind_; }

private:
    TreeCycleErrorKind kind_;
};

/// How many cycle edges the glued face carried at each splice.
struct SplicePatternCounts {
    int three_edges = 0;
    int two_adjacent = 0;
    int two_opposite = 0;
    int one_edge = 0;
};

struct TreeCycleResult {
    VertexSequence cycle; // skeleton vertex ids of extract_surface(p)
    SplicePatternCounts patterns;
};

/// Builds a Hamiltonian cycle of the skeleton of a polycube tree by adding
/// cubes in reverse leaf-removal order and splicing each new cube's far
/// face into the cycle.
TreeCycleResult tree_hamiltonian_cycle(const Polycube& p);

} // namespace polycube
