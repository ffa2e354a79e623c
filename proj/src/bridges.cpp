#include "fairslice/bridges.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairslice {

std::pair<DiscreteInstance, DiscretizationMap> continuous_to_discrete(const CakeInstance& inst,
                                                                      const Rat& eps) {
    int n = inst.agents();
    if (eps <= 0 || eps >= 1) throw InvalidInstanceError("tolerance must lie in (0, 1)");

    // the reduction needs agent-disjoint value blocks
    struct Owned {
        int owner, block;
        Rat left, right;
    };
    std::vector<Owned> all;
    int m = 0;
    for (int i = 0; i < n; ++i) {
        const auto& blocks = inst.valuations[i].blocks();
        m = std::max(m, static_cast<int>(blocks.size()));
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
            all.push_back({i, b, blocks[b].left, blocks[b].right});
    }
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a + 1; b < all.size(); ++b)
            if (all[a].owner != all[b].owner &&
                std::max(all[a].left, all[b].left) < std::min(all[a].right, all[b].right))
                throw InvalidInstanceError("value blocks of distinct agents overlap");

    DiscretizationMap map;
    mpz_class steps = rat_ceil(Rat(m + 2) / eps);
    map.delta = Rat(1) / Rat(steps);
    map.max_blocks = m;
    map.retained_per_agent = mpz_class(steps - m).get_si();

    // slice every block into sub-blocks of value delta, left to right,
    // dropping the incomplete remainder
    std::vector<std::vector<DiscretizationMap::Item>> per_agent(n);
    for (int i = 0; i < n; ++i) {
        const auto& blocks = inst.valuations[i].blocks();
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
            Rat width = map.delta / blocks[b].height;
            mpz_class complete = rat_floor(blocks[b].length() / width);
            for (mpz_class t = 0; t < complete; ++t) {
                Rat l = blocks[b].left + Rat(t) * width;
                per_agent[i].push_back({i, b, l, l + width, l + width / 2});
            }
        }
        if (static_cast<long>(per_agent[i].size()) < map.retained_per_agent)
            throw std::logic_error("discretization lost more than one sub-block per block");
        per_agent[i].resize(map.retained_per_agent);
    }

    for (auto& items : per_agent)
        map.items.insert(map.items.end(), items.begin(), items.end());
    std::sort(map.items.begin(), map.items.end(), [](const auto& a, const auto& b) {
        return std::tie(a.position, a.owner, a.block) < std::tie(b.position, b.owner, b.block);
    });

    DiscreteInstance out;
    out.items = static_cast<int>(map.items.size());
    out.values.assign(n, std::vector<Rat>(out.items, 0));
    for (int t = 0; t < out.items; ++t) out.values[map.items[t].owner][t] = 1;
    return {out, map};
}

ContiguousAllocation discrete_solution_to_continuous(const DiscretizationMap& map,
                                                     const DiscreteAllocation& dalloc) {
    int total = static_cast<int>(map.items.size());
    ContiguousAllocation alloc;
    alloc.order = dalloc.order;
    for (int e : dalloc.cuts) {
        if (e == 0)
            alloc.cuts.push_back(0);
        else if (e == total)
            alloc.cuts.push_back(1);
        else
            alloc.cuts.push_back((map.items[e - 1].position + map.items[e].position) / 2);
    }
    return alloc;
}

std::tuple<CakeInstance, Rat, EmbeddingMap> discrete_to_continuous(const DiscreteInstance& inst) {
    inst.validate();
    if (!inst.binary() || !inst.disjoint())
        throw InvalidInstanceError("embedding requires disjoint binary valuations");
    int n = inst.agents();
    int m = inst.items;

    EmbeddingMap map;
    map.m = m;
    map.owner.assign(m, -1);
    for (int t = 0; t < m; ++t)
        for (int i = 0; i < n; ++i)
            if (inst.values[i][t] != 0) map.owner[t] = i;
    for (int i = 0; i < n; ++i) map.m_i.push_back(inst.valued_counts()[i]);

    CakeInstance cake;
    map.eps = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<Block> blocks;
        for (int t = 0; t < m; ++t)
            if (map.owner[t] == i)
                blocks.push_back({rat(t, m), rat(t + 1, m), Rat(m) / Rat(map.m_i[i])});
        cake.valuations.emplace_back(blocks);
        map.eps = std::min(map.eps, Rat(rat(1, n * map.m_i[i])));
    }
    return {cake, map.eps, map};
}

namespace {

// region (1-based grid cell) strictly containing x, or 0 when x sits on a
// grid boundary
int strict_region(const Rat& x, int m) {
    Rat scaled = x * m;
    mpz_class f = rat_floor(scaled);
    if (Rat(f) == scaled) return 0;
    return static_cast<int>(f.get_si()) + 1;
}

}  // namespace

DiscreteAllocation round_i_chains(const CakeInstance& inst, const ContiguousAllocation& alloc,
                                  const EmbeddingMap& map) {
    int n = inst.agents();
    int m = map.m;
    if (alloc.agents() != n || !alloc.well_formed())
        throw InvalidInstanceError("malformed allocation");
    if (!is_eps_ef(inst, alloc, map.eps))
        throw InvalidInstanceError("allocation is not within the embedding tolerance");

    std::vector<Rat> c = alloc.cuts;
    int nc = n - 1;

    auto set_cut = [&](int t, const Rat& target) {
        Rat floor_val = t == 0 ? Rat(0) : c[t - 1];
        c[t] = std::max(target, floor_val);
        for (int s = t + 1; s < nc; ++s)
            if (c[s] < c[t]) c[s] = c[t];
    };
    auto piece_value = [&](int agent, int p) {
        Rat l = p == 0 ? Rat(0) : c[p - 1];
        Rat r = p == nc ? Rat(1) : c[p];
        return inst.valuations[agent].eval(l, r);
    };

    // cuts in unvalued regions: nearest grid boundary, ties left
    for (int t = 0; t < nc; ++t) {
        int j = strict_region(c[t], m);
        if (j == 0 || map.owner[j - 1] >= 0) continue;
        Rat lo = rat(j - 1, m), hi = rat(j, m);
        set_cut(t, c[t] - lo <= hi - c[t] ? lo : hi);
    }

    // cuts in a region valued by an adjacent piece's owner: enlarge that piece
    for (int t = 0; t < nc; ++t) {
        int j = strict_region(c[t], m);
        if (j == 0) continue;
        int o = map.owner[j - 1];
        if (o == alloc.order[t])
            set_cut(t, rat(j, m));
        else if (o == alloc.order[t + 1])
            set_cut(t, rat(j - 1, m));
    }

    // remaining cuts sit in regions valued by non-adjacent agents; round each
    // run of same-agent cuts left to right so neither side starts to envy
    std::vector<int> region(nc);
    for (int t = 0; t < nc; ++t) region[t] = strict_region(c[t], m);
    int t = 0;
    while (t < nc) {
        if (region[t] == 0) {
            ++t;
            continue;
        }
        int i = map.owner[region[t] - 1];
        int run = t;
        while (run < nc && region[run] != 0 && map.owner[region[run] - 1] == i) ++run;
        int k = run - t;
        if (Rat(k + 1) * map.eps >= Rat(1) / Rat(map.m_i[i]))
            throw std::logic_error("chain of cuts too long for the rounding tolerance");
        int own_piece = alloc.piece_of(i);
        for (int s = t; s < run; ++s) {
            int j = strict_region(c[s], m);
            if (j == 0) continue;  // pulled onto the grid by an earlier cut
            Rat saved = c[s];
            c[s] = rat(j, m);
            bool right_ok = piece_value(i, s) <= piece_value(i, own_piece);
            c[s] = saved;
            set_cut(s, right_ok ? rat(j, m) : rat(j - 1, m));
        }
        t = run;
    }

    DiscreteAllocation out;
    out.order = alloc.order;
    for (int s = 0; s < nc; ++s) {
        Rat scaled = c[s] * m;
        mpz_class e = rat_floor(scaled);
        if (Rat(e) != scaled)
            throw std::logic_error("rounded cut missed the item grid");
        out.cuts.push_back(static_cast<int>(e.get_si()));
    }
    return out;
}

}  // namespace fairslice
