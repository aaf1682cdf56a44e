#pragma once

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polycube/hampath.hpp"
#include "polycube/surface.hpp"

namespace polycube {

/// Cut edges as surface vertex id pairs (a < b), sorted.
class CutTree {
public:
    CutTree() = default;
    explicit CutTree(std::vector<std::pair<int, int>> edges);

    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }
    bool contains(int a, int b) const;
    /// Vertex ids touched by the cut, ascending.
    std::vector<int> vertices() const;

    static CutTree from_path(const VertexSequence& path);
    friend bool operator==(const CutTree&, const CutTree&) = default;

private:
    std::vector<std::pair<int, int>> edges_;
};

enum class InvalidCutKind { UnknownEdge, NotATree, MissesCorner };

class InvalidCutError : public std::invalid_argument {
public:
    InvalidCutError(InvalidCutKind kind, std::string message, int vertex = -1);
    InvalidCutKind kind() const noexcept { return kind_; }
    /// The missed corner (MissesCorner) or an endpoint of the bad edge.
    int vertex() const noexcept { return vertex_; }

private:
    InvalidCutKind kind_;
    int vertex_;
};

class DevelopmentInconsistent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Cell {
    int i = 0;
    int j = 0;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

struct Point2 {
    int x = 0;
    int y = 0;
    friend constexpr auto operator<=>(const Point2&, const Point2&) = default;
};

/// One of the 8 symmetries of a square cell. Face vertex m lands on cell
/// corner (m + rotation) % 4, or (rotation - m) % 4 when mirrored. Cell
/// corners are numbered CCW from (i, j). Development with the outside up
/// only ever produces rotations.
struct Frame {
    int rotation = 0;
    bool mirrored = false;

    int corner_of(int m) const { return mirrored ? ((rotation - m) % 4 + 4) % 4 : (m + rotation) % 4; }
    friend constexpr bool operator==(const Frame&, const Frame&) = default;
};

Point2 cell_corner(const Cell& c, int corner);

struct FacePlacement {
    Cell cell;
    Frame frame;
};

enum class FoldKind { Cut, Mountain, Valley, Flat };

std::string to_string(FoldKind k);

struct CellOverlap {
    Cell cell;
    std::vector<int> faces;
};

struct NetLayout {
    std::vector<FacePlacement> faces; // by surface face id
    std::vector<FoldKind> edges;      // by surface edge id
    std::vector<CellOverlap> overlaps;

    /// Planar image of face f's m-th vertex.
    Point2 vertex_image(int f, int m) const;
};

/// Develops the surface cut along `cut` onto the unit grid. Throws
/// InvalidCutError for a bad cut and DevelopmentInconsistent if the faces
/// do not close up.
NetLayout unfold(const SurfaceModel& s, const CutTree& cut);

/// True iff no two faces share a cell.
bool overlap_check(const NetLayout& net);

/// Face sides not glued to their neighbour: sides of cut edges (even where
/// the two sides touch in the plane) and uncut sides whose neighbour is not
/// developed onto the same segment.
int boundary_length(const SurfaceModel& s, const NetLayout& net);

/// True when every vertex off the cut has all 4 of its faces meeting at one
/// planar point.
bool uncut_vertices_close(const SurfaceModel& s, const CutTree& cut, const NetLayout& net);

/// Cells translated to the origin and reduced to the smallest of the 8
/// square symmetries, for comparing nets up to congruence.
std::vector<Cell> canonical_cells(const NetLayout& net);

/// Every spanning tree of g, as cuts (exponential; meant for small graphs).
std::vector<CutTree> spanning_cut_trees(const SkeletonGraph& g);

struct EdgeUnfoldingResult {
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::optional<CutTree> cut;
    std::optional<NetLayout> net;
    std::uint64_t restarts = 0;      // restarts started, including the winning one
    std::uint64_t winning_restart = 0;
    std::uint64_t moves = 0;         // annealing moves over all restarts counted
    double elapsed_ms = 0.0;
};

/// Simulated annealing over spanning trees of the skeleton, scored by the
/// number of doubly covered cells. cfg.seed fixes the run; cfg.max_expansions
/// caps the total number of moves. Flat leaves are pruned from a found cut.
EdgeUnfoldingResult edge_unfolding_search(const SurfaceModel& s, const SearchConfig& cfg);

struct ZipperUnfoldingResult {
    SearchStatus status = SearchStatus::Absent;
    std::optional<VertexSequence> path;
    std::optional<NetLayout> net;
    /// Absent: "no-cut-path" or "all-paths-overlap".
    std::string detail;
    std::optional<Obstruction> certificate;
    std::uint64_t paths_tried = 0;
    SearchStats stats;
};

ZipperUnfoldingResult zipper_unfolding_search(const SurfaceModel& s, const SearchConfig& cfg);

} // namespace polycube
