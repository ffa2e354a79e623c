#pragma once

#include <tuple>
#include <utility>

#include "fairslice/allocation.hpp"
#include "fairslice/discrete.hpp"

namespace fairslice {

// Record of a cake -> items discretization: every retained sub-block of
// value delta became one item, placed at the sub-block's midpoint.
struct DiscretizationMap {
    struct Item {
        int owner;     // agent whose block produced the item
        int block;     // index of that block in the owner's valuation
        Rat left, right;
        Rat position;  // midpoint of [left, right]
    };

    Rat delta;
    std::vector<Item> items;   // sorted by (position, owner, block)
    long retained_per_agent;   // 1/delta - max blocks per agent
    int max_blocks;
};

// Cuts a cake with agent-disjoint value blocks into items of value delta
// each (delta = largest unit fraction <= eps/(m+2), m = max blocks per
// agent).  Incomplete trailing sub-blocks are dropped and each agent is
// trimmed, rightmost items first, to the common retained count.
std::pair<DiscreteInstance, DiscretizationMap> continuous_to_discrete(const CakeInstance& inst,
                                                                      const Rat& eps);

// Maps an allocation of the discretized items back to cake cuts placed
// midway between the items on either side of each block boundary.  The
// result is eps-envy-free for the original cake whenever the discrete
// allocation was envy-free.
ContiguousAllocation discrete_solution_to_continuous(const DiscretizationMap& map,
                                                     const DiscreteAllocation& dalloc);

// Record of an items -> cake embedding: item j becomes the region
// [(j-1)/m, j/m], carrying a block of height m/m_i for its owner.
struct EmbeddingMap {
    int m = 0;
    std::vector<int> owner;  // per region; -1 when the item is unvalued
    std::vector<int> m_i;    // valued-item count per agent
    Rat eps;                 // prescribed tolerance min_i 1/(n*m_i)
};

// Embeds a disjoint binary item instance into the cake; the returned eps is
// the tolerance at which a continuous solution can be rounded back exactly.
std::tuple<CakeInstance, Rat, EmbeddingMap> discrete_to_continuous(const DiscreteInstance& inst);

// Rounds an eps-envy-free continuous allocation of an embedded instance to
// item boundaries, yielding an exactly envy-free discrete allocation.  Cuts
// in unvalued regions snap to the nearest boundary; a cut in a region valued
// by the adjacent piece's owner is rounded to enlarge that piece; remaining
// runs of same-owner cuts (i-chains) are rounded left to right against the
// owner's fixed share.
DiscreteAllocation round_i_chains(const CakeInstance& inst, const ContiguousAllocation& alloc,
                                  const EmbeddingMap& map);

}  // namespace fairslice
