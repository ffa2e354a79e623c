#pragma once

#include "fairslice/allocation.hpp"
#include "fairslice/valuation.hpp"

#include <utility>
#include <vector>

namespace fairslice {

// One-quarter envy-free protocol for agents whose valuations are uniform over
// a single interval.  Agents are processed in order of non-decreasing interval
// length (ties by index); each turn assigns an interval of value at most 1/4
// according to one of four cases, and a final extension phase grows the pieces
// to cover the whole cake.

enum class CaseKind { Case1, Case2, Case3, Case4 };

// Per-turn trace entry.  `agent` is the 0-based agent whose turn it was;
// [left,right] is the interval assigned before the extension phase.
struct CaseTag {
    int agent = -1;
    CaseKind kind = CaseKind::Case1;
    // Case 2 only: the competing-agent set S and k = its first element in
    // processing order (-1 when S is empty).  `fallback` marks turns where no
    // interval anchored at mid(k) fit and a centered interval was used.
    std::vector<int> s_set;
    int k = -1;
    bool fallback = false;
    // Case 3 only: the agent whose assigned interval contains this midpoint.
    int ell = -1;
    Rat left, right;
};

// Snapshot of one agent's turn: what is already allocated, the maximal free
// subintervals of the agent's valued interval, and which of those free
// intervals touch an allocated interval.
struct TurnState {
    struct Interval {
        Rat left, right;
    };
    std::vector<Interval> allocated;
    std::vector<Interval> available;
    std::vector<bool> restrained;  // parallel to `available`
};

// Runs the protocol and returns the allocation together with the case trace
// (one entry per agent, in processing order).  The result has max envy at
// most 1/4.  Throws InvalidInstanceError unless every valuation is uniform
// over a single interval.
std::pair<ContiguousAllocation, std::vector<CaseTag>> run_alg2(const CakeInstance& inst);

}  // namespace fairslice
