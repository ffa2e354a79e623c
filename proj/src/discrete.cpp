#include "fairslice/discrete.hpp"

#include <algorithm>

#include "fairslice/bridges.hpp"
#include "fairslice/exact_solver.hpp"

namespace fairslice {

bool DiscreteInstance::binary() const {
    for (const auto& row : values)
        for (const Rat& v : row)
            if (v != 0 && v != 1) return false;
    return true;
}

bool DiscreteInstance::disjoint() const {
    for (int t = 0; t < items; ++t) {
        int owners = 0;
        for (const auto& row : values)
            if (row[t] != 0) ++owners;
        if (owners > 1) return false;
    }
    return true;
}

Rat DiscreteInstance::row_total(int agent) const {
    Rat s = 0;
    for (const Rat& v : values[agent]) s += v;
    return s;
}

Rat DiscreteInstance::normalized(int agent, int item) const {
    return values[agent][item] / row_total(agent);
}

std::vector<int> DiscreteInstance::valued_counts() const {
    std::vector<int> out;
    for (const auto& row : values) {
        int c = 0;
        for (const Rat& v : row)
            if (v != 0) ++c;
        out.push_back(c);
    }
    return out;
}

void DiscreteInstance::validate() const {
    if (items < 0 || values.empty()) throw InvalidInstanceError("empty item instance");
    for (const auto& row : values) {
        if (static_cast<int>(row.size()) != items)
            throw InvalidInstanceError("value row length mismatch");
        Rat s = 0;
        for (const Rat& v : row) {
            if (v < 0) throw InvalidInstanceError("negative item value");
            s += v;
        }
        if (s <= 0) throw InvalidInstanceError("agent values nothing");
    }
}

int DiscreteAllocation::block_of(int agent) const {
    for (int j = 0; j < blocks(); ++j)
        if (order[j] == agent) return j;
    return -1;
}

bool DiscreteAllocation::well_formed(const DiscreteInstance& inst) const {
    int n = inst.agents();
    if (static_cast<int>(order.size()) != n) return false;
    if (static_cast<int>(cuts.size()) != n - 1) return false;
    int prev = 0;
    for (int c : cuts) {
        if (c < prev || c > inst.items) return false;
        prev = c;
    }
    std::vector<bool> seen(n, false);
    for (int a : order) {
        if (a < 0 || a >= n || seen[a]) return false;
        seen[a] = true;
    }
    return true;
}

namespace {

// normalized value of a block to an agent
Rat block_value(const DiscreteInstance& inst, const DiscreteAllocation& alloc, int agent,
                int block) {
    Rat s = 0;
    for (int t = alloc.block_begin(block); t < alloc.block_end(block, inst.items); ++t)
        s += inst.values[agent][t];
    return s / inst.row_total(agent);
}

}  // namespace

DiscreteCheckReport check_discrete(const DiscreteInstance& inst, const DiscreteAllocation& alloc,
                                   const FairnessCriteria& criteria) {
    inst.validate();
    if (!alloc.well_formed(inst)) throw InvalidInstanceError("malformed discrete allocation");
    int n = inst.agents();
    DiscreteCheckReport rep;

    // envy checks need the full cross matrix; the other criteria only
    // need each agent's own value, which matters on large instances
    bool need_matrix = criteria.ef || criteria.eps_ef;
    std::vector<std::vector<Rat>> val;
    if (need_matrix) {
        val.assign(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) val[i][j] = block_value(inst, alloc, i, j);
    }
    std::vector<Rat> own(n);
    for (int i = 0; i < n; ++i)
        own[i] = need_matrix ? val[i][alloc.block_of(i)]
                             : block_value(inst, alloc, i, alloc.block_of(i));

    auto note = [&](const std::string& s) { rep.violations.push_back(s); };
    for (int i = 0; i < n; ++i) {
        if (criteria.prop && own[i] < rat(1, n)) {
            rep.prop = false;
            note("agent " + std::to_string(i + 1) + " below proportional share");
        }
        if (criteria.positive_value && own[i] <= 0) {
            rep.positive_value = false;
            note("agent " + std::to_string(i + 1) + " receives zero value");
        }
        if (criteria.eq && own[i] != own[0]) {
            rep.eq = false;
            note("agent " + std::to_string(i + 1) + " value differs from agent 1");
        }
        for (int j = 0; need_matrix && j < n; ++j) {
            Rat envy = val[i][j] - own[i];
            if (criteria.ef && envy > 0) {
                rep.ef = false;
                note("agent " + std::to_string(i + 1) + " envies block " + std::to_string(j + 1));
            }
            if (criteria.eps_ef && envy > *criteria.eps_ef) {
                rep.eps_ef = false;
                note("agent " + std::to_string(i + 1) + " envy exceeds tolerance");
            }
        }
    }
    return rep;
}

std::optional<DiscreteAllocation> brute_force_discrete(const DiscreteInstance& inst,
                                                       const FairnessCriteria& criteria) {
    inst.validate();
    int n = inst.agents();
    int m = inst.items;

    mpz_class space = 1;
    for (int i = 0; i < n; ++i) space *= i + 1;
    mpz_class combos;
    mpz_bin_uiui(combos.get_mpz_t(), m + n - 1, n - 1);
    space *= combos;
    if (space > search_limit())
        throw ResourceLimitError("discrete search space " + space.get_str() + " exceeds limit " +
                                 std::to_string(search_limit()));

    std::vector<int> perm0(n);
    for (int i = 0; i < n; ++i) perm0[i] = i;

    DiscreteAllocation alloc;
    alloc.cuts.assign(n - 1, 0);
    for (;;) {
        std::vector<int> perm = perm0;
        do {
            alloc.order = perm;
            if (check_discrete(inst, alloc, criteria).ok()) return alloc;
        } while (std::next_permutation(perm.begin(), perm.end()));
        // next non-decreasing boundary vector
        int j = n - 2;
        while (j >= 0 && alloc.cuts[j] == m) --j;
        if (j < 0) return std::nullopt;
        int v = alloc.cuts[j] + 1;
        for (int s = j; s < n - 1; ++s) alloc.cuts[s] = v;
    }
}

DiscreteAllocation solve_disjoint_ef(const DiscreteInstance& inst) {
    inst.validate();
    if (!inst.binary() || !inst.disjoint())
        throw InvalidInstanceError("solver requires disjoint binary valuations");
    auto [cake, eps, map] = discrete_to_continuous(inst);
    auto approx = grid_eps_ef(cake, eps);
    if (!approx)
        throw std::logic_error("no eps-envy-free grid allocation found for embedded instance");
    return round_i_chains(cake, *approx, map);
}

}  // namespace fairslice
