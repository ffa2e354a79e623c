#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fairslice/allocation.hpp"
#include "fairslice/valuation.hpp"

namespace fairslice {

// Thrown when an enumeration would exceed the configured search budget.
// The message carries the attempted search-space size.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Search budget shared by the enumerating solvers; overridable through the
// FAIRSLICE_LIMIT environment variable.
unsigned long search_limit();

// Per-cut cell [lo_j, hi_j]: either two consecutive points of the breakpoint
// grid or a single point (a pinned cut).  Every density is constant on each
// non-degenerate cell, which makes piece values linear in the cut positions.
struct CellAssignment {
    std::vector<Rat> lo, hi;

    int cuts() const { return static_cast<int>(lo.size()); }
};

// Cells containing the given cut positions; cuts sitting exactly on a grid
// point are pinned there.
CellAssignment cells_for_cuts(const std::vector<Rat>& grid, const std::vector<Rat>& cuts);

struct MinEnvyResult {
    bool feasible = false;
    Rat z;                  // minimum achievable maximum envy (may be < 0)
    std::vector<Rat> cuts;  // attaining cut positions (one per cell)
};

// Minimum of the maximum envy over all cut placements within `cells`, with
// the piece-to-agent assignment fixed to `order` (order[p] = agent of piece
// p, left to right).  Exact LP; infeasible when the cells cannot be ordered.
MinEnvyResult min_envy_for_cells(const CakeInstance& inst, const std::vector<int>& order,
                                 const CellAssignment& cells);

// Snaps a nearly envy-free allocation to an exactly envy-free one with the
// same piece order and each cut inside its original breakpoint cell.
// Returns nullopt when the residual LP minimum is positive, i.e. the input
// was not close enough to an envy-free allocation.
std::optional<ContiguousAllocation> exactify(const CakeInstance& inst,
                                             const ContiguousAllocation& approx);

// Precision needed before exactify is guaranteed to succeed, as a function
// of the largest numerator/denominator M in the instance description, the
// block count k per agent and the agent count n.  `remark_mode` applies the
// sharper bound valid when every description number has denominator exactly
// M.
struct PrecisionParams {
    unsigned long M = 3;
    int k = 1;
    int n = 1;
    bool remark_mode = false;
};
Rat precision_bound(const PrecisionParams& p);

// Side constraint for the exact envy-free decision procedure.
struct EFConstraint {
    enum class Kind {
        NONE,
        AGENT_LEFTMOST,   // agents[0] owns the leftmost piece
        PREFIX_ORDER,     // agents is a prefix of the piece order
        FULL_ORDER,       // agents is the entire piece order
        CUT_AT,           // some cut sits at positions[0]
        LEFTMOST_CUT_AT,  // the first cut sits at positions[0]
        CUTS_AT,          // cuts at all of positions (not necessarily all cuts)
        ALL_CUTS,         // the full cut vector equals positions
    };
    Kind kind = Kind::NONE;
    std::vector<int> agents;     // 0-based
    std::vector<Rat> positions;  // sorted for CUTS_AT / ALL_CUTS
};

// Decides whether an exactly envy-free contiguous allocation satisfying the
// constraint exists, and returns one if so.  Complete for piecewise-constant
// valuations: enumerates piece orders and breakpoint cells, solving one LP
// per class.  Deterministic (orders in lexicographic sequence).
std::optional<ContiguousAllocation> decide_ef(const CakeInstance& inst,
                                              const EFConstraint& constraint);

// First allocation, in lexicographic (cuts, order) sequence, whose cuts all
// lie on the grid {k*eps} together with 1 and whose maximum envy is at most
// eps.  Equivalent to brute-force grid enumeration but implemented through
// per-class LPs, so very fine meshes remain tractable.
std::optional<ContiguousAllocation> grid_eps_ef(const CakeInstance& inst, const Rat& eps);

// Envy-free allocation with the cut vector fixed in advance, as a bipartite
// matching between agents and the pieces they value maximally.
std::optional<ContiguousAllocation> ef_with_fixed_all_cuts(const CakeInstance& inst,
                                                           const std::vector<Rat>& cuts);

}  // namespace fairslice
