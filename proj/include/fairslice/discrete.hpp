#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairslice/valuation.hpp"

namespace fairslice {

// Indivisible items arranged on a line; each agent assigns a rational value
// to every item.  Values are normalized by row sum when evaluated, so a
// binary agent valuing m_i items holds 1/m_i per valued item.
struct DiscreteInstance {
    int items = 0;
    std::vector<std::vector<Rat>> values;  // agents x items

    int agents() const { return static_cast<int>(values.size()); }
    bool binary() const;
    bool disjoint() const;  // every item valued by at most one agent
    Rat row_total(int agent) const;
    Rat normalized(int agent, int item) const;
    std::vector<int> valued_counts() const;  // number of nonzero entries per agent
    void validate() const;                   // throws InvalidInstanceError
};

// Contiguous blocks of items: block j (0-based, left to right) covers item
// indices [begin_j, end_j) with boundaries taken from `cuts`; order[j] is the
// agent owning block j.  Empty blocks are allowed.
struct DiscreteAllocation {
    std::vector<int> cuts;  // n-1 non-decreasing boundaries in [0, items]
    std::vector<int> order;

    int blocks() const { return static_cast<int>(order.size()); }
    int block_begin(int j) const { return j == 0 ? 0 : cuts[j - 1]; }
    int block_end(int j, int items) const {
        return j == blocks() - 1 ? items : cuts[j];
    }
    int block_of(int agent) const;
    bool well_formed(const DiscreteInstance& inst) const;
};

struct FairnessCriteria {
    bool ef = false;
    bool prop = false;
    bool eq = false;
    bool positive_value = false;
    std::optional<Rat> eps_ef;
};

// Per-criterion outcome; criteria that were not requested stay true.
struct DiscreteCheckReport {
    bool ef = true, prop = true, eq = true, positive_value = true, eps_ef = true;
    std::vector<std::string> violations;

    bool ok() const { return ef && prop && eq && positive_value && eps_ef; }
};

DiscreteCheckReport check_discrete(const DiscreteInstance& inst, const DiscreteAllocation& alloc,
                                   const FairnessCriteria& criteria);

// Exhaustive search over all block boundaries and block-to-agent assignments;
// first hit in lexicographic (cuts, order) sequence.  Complete and sound;
// throws ResourceLimitError past the search budget.
std::optional<DiscreteAllocation> brute_force_discrete(const DiscreteInstance& inst,
                                                       const FairnessCriteria& criteria);

// Envy-free allocation for disjoint binary instances (always exists), found
// by embedding into a continuous cake, solving on an eps-grid and rounding
// the cuts back to item boundaries.
DiscreteAllocation solve_disjoint_ef(const DiscreteInstance& inst);

}  // namespace fairslice
