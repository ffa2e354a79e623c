#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fairslice/allocation.hpp"
#include "fairslice/discrete.hpp"

namespace fairslice {

struct Literal {
    int var = 0;  // 0-based variable index
    bool negated = false;
};

struct Formula3SAT {
    int variables = 0;
    std::vector<std::array<Literal, 3>> clauses;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    void validate() const;  // throws InvalidInstanceError
    bool satisfied_by(const std::vector<bool>& assignment) const;
};

// 3n positive integers summing to nB; a solution partitions them into n
// triples each summing to B.
struct ThreePartitionInput {
    std::vector<long> x;

    int n() const { return static_cast<int>(x.size()) / 3; }
    long B() const;
    void validate() const;  // size, sum divisibility, B/4 < x_i < B/2
};

// Coordinate table describing where each gadget and agent ended up, so the
// generated instances stay auditable.
struct GadgetCertificate {
    struct Region {
        std::string name;
        Rat left, right;  // cake coordinates, already rescaled to [0,1]
    };
    struct ItemRange {
        std::string name;
        int begin = 0, end = 0;  // half-open item index range
    };

    std::string kind;
    std::vector<Region> regions;
    std::vector<ItemRange> ranges;
    std::vector<std::string> agent_names;  // instance index -> role
    Rat epsilon;                           // tolerance the reduction is stated for
    Rat scale;                             // cake construction length before rescaling
};

// 3-SAT to cake: clause gadgets, variable gadgets, and the isolating
// machinery that pins down the standard left-to-right agent ordering.
std::pair<CakeInstance, GadgetCertificate> gen_cake_from_3sat(const Formula3SAT& f);

// Envy-free allocation of the generated cake built from a satisfying
// assignment; pieces follow the standard ordering and there is a cut at the
// (rescaled) position 1.
ContiguousAllocation witness_cake(const Formula3SAT& f, const std::vector<bool>& assignment);

// 3-SAT to items where every agent values the same number of items; hard for
// every combination of envy-freeness, proportionality and equitability.
std::pair<DiscreteInstance, GadgetCertificate> gen_items_combined(const Formula3SAT& f);

// Envy-free and equitable allocation (two valued items per agent) from a
// satisfying assignment.
DiscreteAllocation witness_items_combined(const Formula3SAT& f,
                                          const std::vector<bool>& assignment);

// 3-SAT to items for approximate envy-freeness: every agent values exactly 13
// items, so eps-EF collapses to exact EF for eps < 1/13.
std::pair<DiscreteInstance, GadgetCertificate> gen_items_epsef(const Formula3SAT& f);

DiscreteAllocation witness_items_epsef(const Formula3SAT& f, const std::vector<bool>& assignment);

// 3-PARTITION to items, proportionality variant: special, normal and dummy
// items with n' = 4n(k+1) agents, k = 4B.
std::pair<DiscreteInstance, GadgetCertificate> gen_items_prop_3part(const ThreePartitionInput& in);

// Proportional allocation from a 3-partition solution (n triples of indices
// into x, each summing to B).
DiscreteAllocation witness_items_prop_3part(const ThreePartitionInput& in,
                                            const std::vector<std::array<int, 3>>& parts);

// 3-PARTITION to items, equitability variant: B left-region K-blocks plus n
// right-region blocks, K = nB.  Inputs with some x_i <= n are scaled by n
// first, which preserves solutions.
std::pair<DiscreteInstance, GadgetCertificate> gen_items_equit_3part(const ThreePartitionInput& in);

DiscreteAllocation witness_items_equit_3part(const ThreePartitionInput& in,
                                             const std::vector<std::array<int, 3>>& parts);

// Exhaustive certification of the clause-gadget "sad agent" bound: over every
// placement class of two cuts in a standalone clause gadget and every
// assignment of the three pieces to the three agents, the best achievable
// minimum value (in the gadget's original 0.72-per-agent units) is <= 6/25.
struct ClauseGadgetReport {
    Rat max_min_value;        // in original units; claim: <= 6/25
    long classes = 0;         // LP classes enumerated
    bool bound_holds = false;
    bool variable_regions_disjoint = false;  // one cut cannot split both literal regions
};

ClauseGadgetReport verify_clause_gadget_property();

}  // namespace fairslice
