#pragma once

#include <vector>

#include "fairslice/valuation.hpp"

namespace fairslice {

/// n-1 sorted cuts plus the left-to-right assignment of pieces to agents.
/// Piece j (0-based) is [x_{j-1}, x_j] with x_{-1} = 0 and x_{n-1} = 1;
/// order[j] is the (0-based) agent owning piece j.
struct ContiguousAllocation {
    std::vector<Rat> cuts;
    std::vector<int> order;

    int agents() const { return static_cast<int>(order.size()); }
    Rat piece_left(int j) const { return j == 0 ? Rat(0) : cuts[j - 1]; }
    Rat piece_right(int j) const {
        return j == agents() - 1 ? Rat(1) : cuts[j];
    }
    /// Index of the piece owned by agent i.
    int piece_of(int agent) const;
    bool well_formed() const;
};

/// Full pairwise envy matrix: entry (i,j) = v_i(piece of j) - v_i(piece of i).
struct EnvyReport {
    std::vector<std::vector<Rat>> matrix;
    Rat max_envy;
};

EnvyReport envy_report(const CakeInstance& inst, const ContiguousAllocation& alloc);

/// max_envy <= eps; eps = 0 tests exact envy-freeness.
bool is_eps_ef(const CakeInstance& inst, const ContiguousAllocation& alloc, const Rat& eps);

}  // namespace fairslice
