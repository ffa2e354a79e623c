#include "fairslice/gadgets.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fairslice/ratlp.hpp"

namespace fairslice {

void Formula3SAT::validate() const {
    if (variables <= 0 || clauses.empty())
        throw InvalidInstanceError("formula needs at least one variable and one clause");
    for (const auto& cl : clauses)
        for (const Literal& lit : cl)
            if (lit.var < 0 || lit.var >= variables)
                throw InvalidInstanceError("literal references a variable out of range");
}

bool Formula3SAT::satisfied_by(const std::vector<bool>& assignment) const {
    if (static_cast<int>(assignment.size()) != variables) return false;
    for (const auto& cl : clauses) {
        bool sat = false;
        for (const Literal& lit : cl) sat = sat || assignment[lit.var] != lit.negated;
        if (!sat) return false;
    }
    return true;
}

long ThreePartitionInput::B() const {
    long sum = std::accumulate(x.begin(), x.end(), 0L);
    return sum / n();
}

void ThreePartitionInput::validate() const {
    if (x.empty() || x.size() % 3 != 0)
        throw InvalidInstanceError("need 3n positive integers");
    long sum = std::accumulate(x.begin(), x.end(), 0L);
    if (sum % n() != 0) throw InvalidInstanceError("values do not sum to a multiple of n");
    long b = sum / n();
    for (long v : x)
        if (4 * v <= b || 2 * v >= b)
            throw InvalidInstanceError("values must satisfy B/4 < x_i < B/2");
}

// --- 3-SAT to cake ---------------------------------------------------------
//
// Layout on [0, 12m+7n+3] before rescaling: an initiation interval of length
// 3, then the m clause gadgets (length 9) and n variable gadgets (length 4)
// in order, separated by length-3 isolating intervals.  All value-blocks sit
// centered inside unit subintervals so that unit-boundary cuts never touch a
// block interior.

namespace {

struct CakeLayout {
    int m, n;
    Rat L;
    Rat clause_start(int i) const { return 3 + 12 * i; }                 // i in [0,m)
    Rat variable_start(int j) const { return 12 * m + 3 + 7 * j; }       // j in [0,n)
    Rat isolating_start(int k) const {                                   // k in [1, m+n-1]
        return k <= m ? Rat(12 * k) : Rat(12 * m + 7 * (k - m));
    }
};

Block centered(const Rat& unit_left, const Rat& len) {
    Rat margin = (1 - len) / 2;
    return {unit_left + margin, unit_left + margin + len, 1};
}

}  // namespace

std::pair<CakeInstance, GadgetCertificate> gen_cake_from_3sat(const Formula3SAT& f) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;
    CakeLayout lay{m, n, Rat(12 * m + 7 * n + 3)};

    GadgetCertificate cert;
    cert.kind = "cake-3sat";
    cert.epsilon = rat(1, 100);
    cert.scale = lay.L;

    // blocks in pre-scale coordinates, keyed by agent name in standard order
    std::vector<std::pair<std::string, std::vector<Block>>> agents;
    auto blocks_of = [&](const std::string& name) -> std::vector<Block>& {
        for (auto& [nm, bs] : agents)
            if (nm == name) return bs;
        agents.push_back({name, {}});
        return agents.back().second;
    };

    // standard ordering: S_0, S_0', then gadgets left to right with the
    // isolating agent S_k after each gadget except the last
    blocks_of("S_0");
    blocks_of("S_0'");
    for (int i = 0; i < m; ++i) {
        for (int k = 1; k <= 3; ++k)
            blocks_of("C_" + std::to_string(i + 1) + "^" + std::to_string(k));
        if (i + 1 <= m + n - 1) blocks_of("S_" + std::to_string(i + 1));
    }
    for (int j = 0; j < n; ++j) {
        blocks_of("L_" + std::to_string(j + 1));
        blocks_of("R_" + std::to_string(j + 1));
        if (m + j + 1 <= m + n - 1) blocks_of("S_" + std::to_string(m + j + 1));
    }

    for (int i = 0; i < m; ++i) {
        Rat a = lay.clause_start(i);
        for (int k = 1; k <= 3; ++k) {
            auto& bs = blocks_of("C_" + std::to_string(i + 1) + "^" + std::to_string(k));
            for (int t : {0, 3, 6}) bs.push_back(centered(a + (k - 1) + t, rat(6, 25)));
            // literal block in the variable gadget, value 7/25
            const Literal& lit = f.clauses[i][k - 1];
            Rat b = lay.variable_start(lit.var);
            bs.push_back(centered(b + (lit.negated ? 2 : 1), rat(7, 25)));
        }
    }
    for (int j = 0; j < n; ++j) {
        Rat b = lay.variable_start(j);
        blocks_of("L_" + std::to_string(j + 1)).push_back({b, b + 1, 1});
        blocks_of("R_" + std::to_string(j + 1)).push_back({b + 3, b + 4, 1});
    }
    {
        auto& s0 = blocks_of("S_0");
        s0.push_back(centered(0, rat(1, 7)));
        s0.push_back(centered(2, rat(2, 7)));
        s0.push_back(centered(lay.isolating_start(1), rat(2, 7)));
        s0.push_back(centered(lay.isolating_start(1) + 2, rat(2, 7)));
        blocks_of("S_0'").push_back({1, 2, 1});
    }
    for (int k = 1; k <= m + n - 2; ++k) {
        auto& sk = blocks_of("S_" + std::to_string(k));
        sk.push_back(centered(lay.isolating_start(k) + 1, rat(1, 5)));
        sk.push_back(centered(lay.isolating_start(k + 1), rat(2, 5)));
        sk.push_back(centered(lay.isolating_start(k + 1) + 2, rat(2, 5)));
    }
    {
        Rat a = lay.isolating_start(m + n - 1);
        blocks_of("S_" + std::to_string(m + n - 1)).push_back({a + 1, a + 2, 1});
    }

    CakeInstance inst;
    for (auto& [name, bs] : agents) {
        cert.agent_names.push_back(name);
        std::vector<Block> scaled;
        std::sort(bs.begin(), bs.end(), [](const Block& a, const Block& b) {
            return a.left < b.left;
        });
        for (const Block& blk : bs)
            scaled.push_back({blk.left / lay.L, blk.right / lay.L, 1});
        inst.valuations.emplace_back(scaled);
    }

    for (int i = 0; i < m; ++i)
        cert.regions.push_back({"clause " + std::to_string(i + 1), lay.clause_start(i) / lay.L,
                                (lay.clause_start(i) + 9) / lay.L});
    for (int j = 0; j < n; ++j)
        cert.regions.push_back({"variable " + std::to_string(j + 1),
                                lay.variable_start(j) / lay.L,
                                (lay.variable_start(j) + 4) / lay.L});
    cert.regions.push_back({"initiation", 0, Rat(3) / lay.L});
    for (int k = 1; k <= m + n - 1; ++k)
        cert.regions.push_back({"isolating " + std::to_string(k), lay.isolating_start(k) / lay.L,
                                (lay.isolating_start(k) + 3) / lay.L});
    return {inst, cert};
}

namespace {

// lowest-index true literal of each clause; the associated agent ends up
// "sad" in the witness (one in-gadget block only)
std::vector<int> sad_positions(const Formula3SAT& f, const std::vector<bool>& a) {
    if (!f.satisfied_by(a))
        throw InvalidInstanceError("assignment does not satisfy the formula");
    std::vector<int> sad;
    for (const auto& cl : f.clauses) {
        for (int k = 0; k < 3; ++k)
            if (a[cl[k].var] != cl[k].negated) {
                sad.push_back(k + 1);
                break;
            }
    }
    return sad;
}

}  // namespace

ContiguousAllocation witness_cake(const Formula3SAT& f, const std::vector<bool>& assignment) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;
    CakeLayout lay{m, n, Rat(12 * m + 7 * n + 3)};
    std::vector<int> sad = sad_positions(f, assignment);

    std::vector<Rat> cuts{1, rat(5, 2)};
    for (int i = 0; i < m; ++i) {
        Rat a = lay.clause_start(i);
        switch (sad[i]) {
            case 1: cuts.push_back(a + 1); cuts.push_back(a + 5); break;
            case 2: cuts.push_back(a + 4); cuts.push_back(a + 5); break;
            case 3: cuts.push_back(a + 4); cuts.push_back(a + 8); break;
        }
        Rat iso = lay.isolating_start(i + 1);
        cuts.push_back(iso + rat(1, 2));
        cuts.push_back(iso + rat(5, 2));
    }
    for (int j = 0; j < n; ++j) {
        Rat b = lay.variable_start(j);
        cuts.push_back(b + (assignment[j] ? rat(3, 2) : rat(5, 2)));
        if (j + 1 < n) {
            Rat iso = lay.isolating_start(m + j + 1);
            cuts.push_back(iso + rat(1, 2));
            cuts.push_back(iso + rat(5, 2));
        }
    }

    ContiguousAllocation alloc;
    for (Rat& c : cuts) alloc.cuts.push_back(c / lay.L);
    alloc.order.resize(cuts.size() + 1);
    for (size_t i = 0; i < alloc.order.size(); ++i) alloc.order[i] = static_cast<int>(i);
    return alloc;
}

// --- 3-SAT to items, combined criteria -------------------------------------

namespace {

struct CombinedIndex {
    int m, n;
    int clause_agent(int i, int k) const { return 3 * i + k; }  // k in [0,3)
    int pos_agent(int j) const { return 3 * m + 2 * j; }
    int neg_agent(int j) const { return 3 * m + 2 * j + 1; }
    int special_agent(int t) const { return 3 * m + 2 * n + t; }
    int agents() const { return 6 * m + 4 * n + 7; }
};

}  // namespace

std::pair<DiscreteInstance, GadgetCertificate> gen_items_combined(const Formula3SAT& f) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;
    CombinedIndex ix{m, n};

    GadgetCertificate cert;
    cert.kind = "items-3sat-combined";
    cert.epsilon = 0;
    cert.scale = 1;
    for (int i = 0; i < m; ++i)
        for (int k = 1; k <= 3; ++k)
            cert.agent_names.push_back("C_" + std::to_string(i + 1) + "^" + std::to_string(k));
    for (int j = 0; j < n; ++j) {
        cert.agent_names.push_back("X_" + std::to_string(j + 1));
        cert.agent_names.push_back("~X_" + std::to_string(j + 1));
    }
    for (int t = 0; t < 3 * m + 2 * n + 7; ++t)
        cert.agent_names.push_back("N_" + std::to_string(t + 1));

    std::vector<std::vector<int>> item_owners;  // agents valuing each item
    auto add_item = [&](std::vector<int> owners) { item_owners.push_back(std::move(owners)); };

    for (int i = 0; i < m; ++i) {
        int begin = static_cast<int>(item_owners.size());
        for (int t = 0; t < 4; ++t)
            add_item({ix.clause_agent(i, 0), ix.clause_agent(i, 1), ix.clause_agent(i, 2)});
        cert.ranges.push_back({"clause " + std::to_string(i + 1), begin,
                               static_cast<int>(item_owners.size())});
    }
    for (int j = 0; j < n; ++j) {
        int begin = static_cast<int>(item_owners.size());
        add_item({ix.pos_agent(j), ix.neg_agent(j)});
        add_item({ix.pos_agent(j), ix.neg_agent(j)});
        add_item({ix.pos_agent(j)});
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < 3; ++k)
                if (f.clauses[i][k].var == j && !f.clauses[i][k].negated) {
                    add_item({ix.clause_agent(i, k)});
                    add_item({ix.clause_agent(i, k)});
                }
        add_item({ix.pos_agent(j), ix.neg_agent(j)});
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < 3; ++k)
                if (f.clauses[i][k].var == j && f.clauses[i][k].negated) {
                    add_item({ix.clause_agent(i, k)});
                    add_item({ix.clause_agent(i, k)});
                }
        add_item({ix.neg_agent(j)});
        cert.ranges.push_back({"variable " + std::to_string(j + 1), begin,
                               static_cast<int>(item_owners.size())});
    }
    {
        int begin = static_cast<int>(item_owners.size());
        int count = 6 * m + 4 * n + 14;
        for (int t = 0; t < count; ++t) {
            std::vector<int> owners;
            for (int i = 0; i < m && t < count - 6; ++i)
                for (int k = 0; k < 3; ++k) owners.push_back(ix.clause_agent(i, k));
            if (t < count - 4)
                for (int j = 0; j < n; ++j) {
                    owners.push_back(ix.pos_agent(j));
                    owners.push_back(ix.neg_agent(j));
                }
            for (int s = 0; s < 3 * m + 2 * n + 7; ++s) owners.push_back(ix.special_agent(s));
            add_item(std::move(owners));
        }
        cert.ranges.push_back({"special", begin, static_cast<int>(item_owners.size())});
    }

    DiscreteInstance inst;
    inst.items = static_cast<int>(item_owners.size());
    inst.values.assign(ix.agents(), std::vector<Rat>(inst.items, 0));
    for (int t = 0; t < inst.items; ++t)
        for (int a : item_owners[t]) inst.values[a][t] = 1;
    return {inst, cert};
}

DiscreteAllocation witness_items_combined(const Formula3SAT& f,
                                          const std::vector<bool>& assignment) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;
    CombinedIndex ix{m, n};
    std::vector<int> sad = sad_positions(f, assignment);
    std::vector<bool> is_sad(ix.agents(), false);
    for (int i = 0; i < m; ++i) is_sad[ix.clause_agent(i, sad[i] - 1)] = true;

    // blocks built left to right as (agent, item count)
    std::vector<std::pair<int, int>> segs;
    auto grow_last = [&](int extra) { segs.back().second += extra; };

    for (int i = 0; i < m; ++i) {
        std::vector<int> keep;
        for (int k = 0; k < 3; ++k)
            if (k != sad[i] - 1) keep.push_back(ix.clause_agent(i, k));
        segs.push_back({keep[0], 2});
        segs.push_back({keep[1], 2});
    }
    for (int j = 0; j < n; ++j) {
        std::vector<int> pos, neg;  // literal agents in item order
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < 3; ++k)
                if (f.clauses[i][k].var == j)
                    (f.clauses[i][k].negated ? neg : pos).push_back(ix.clause_agent(i, k));
        if (assignment[j]) {
            segs.push_back({ix.pos_agent(j), 2});
            int pending = 1;  // the item valued only by X_j
            for (int agent : pos) {
                if (is_sad[agent]) {
                    segs.push_back({agent, pending + 2});
                    pending = 0;
                } else {
                    pending += 2;
                }
            }
            // shared middle item, the untouched negative pairs, the ~X_j item
            segs.push_back({ix.neg_agent(j), pending + 2 * static_cast<int>(neg.size()) + 2});
        } else {
            segs.push_back({ix.neg_agent(j), 2});
            segs.push_back({ix.pos_agent(j), 2 * static_cast<int>(pos.size()) + 2});
            int pending = 0;
            for (int agent : neg) {
                if (is_sad[agent]) {
                    segs.push_back({agent, pending + 2});
                    pending = 0;
                } else {
                    pending += 2;
                }
            }
            grow_last(pending + 1);  // free pairs plus the item valued only by ~X_j
        }
    }
    for (int t = 0; t < 3 * m + 2 * n + 7; ++t) segs.push_back({ix.special_agent(t), 2});

    DiscreteAllocation alloc;
    int total = 0;
    for (size_t s = 0; s < segs.size(); ++s) {
        total += segs[s].second;
        alloc.order.push_back(segs[s].first);
        if (s + 1 < segs.size()) alloc.cuts.push_back(total);
    }
    return alloc;
}

// --- 3-SAT to items, approximate envy-freeness -----------------------------

std::pair<DiscreteInstance, GadgetCertificate> gen_items_epsef(const Formula3SAT& f) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;

    GadgetCertificate cert;
    cert.kind = "items-3sat-epsef";
    cert.epsilon = rat(1, 13);
    cert.scale = 1;

    std::vector<std::vector<int>> item_owners;
    int next_agent = 0;
    auto new_agent = [&](const std::string& name) {
        cert.agent_names.push_back(name);
        return next_agent++;
    };

    // agents in order of appearance; literal agents are created first per
    // clause so items can reference them
    std::vector<std::array<int, 3>> clause_agents(m);
    std::vector<int> l_agent(n), r_agent(n);

    auto add_isolation = [&](int index) {
        int begin = static_cast<int>(item_owners.size());
        std::vector<int> five;
        for (int t = 0; t < 5; ++t)
            five.push_back(new_agent("I_" + std::to_string(index) + "." + std::to_string(t + 1)));
        for (int t = 0; t < 13; ++t) item_owners.push_back(five);
        cert.ranges.push_back({"isolation " + std::to_string(index), begin,
                               static_cast<int>(item_owners.size())});
    };

    int gadget = 0;
    for (int i = 0; i < m; ++i) {
        int begin = static_cast<int>(item_owners.size());
        for (int k = 0; k < 3; ++k)
            clause_agents[i][k] =
                new_agent("C_" + std::to_string(i + 1) + "^" + std::to_string(k + 1));
        for (int rep = 0; rep < 3; ++rep)
            for (int k = 0; k < 3; ++k)
                for (int t = 0; t < 3; ++t) item_owners.push_back({clause_agents[i][k]});
        cert.ranges.push_back({"clause " + std::to_string(i + 1), begin,
                               static_cast<int>(item_owners.size())});
        if (++gadget < m + n) add_isolation(gadget);
    }
    for (int j = 0; j < n; ++j) {
        int begin = static_cast<int>(item_owners.size());
        l_agent[j] = new_agent("L_" + std::to_string(j + 1));
        r_agent[j] = new_agent("R_" + std::to_string(j + 1));
        std::vector<int> pos, neg;
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < 3; ++k)
                if (f.clauses[i][k].var == j)
                    (f.clauses[i][k].negated ? neg : pos).push_back(clause_agents[i][k]);
        for (int t = 0; t < 13; ++t) item_owners.push_back({l_agent[j]});
        for (int t = 0; t < 4; ++t) item_owners.push_back(pos);
        for (int t = 0; t < 4; ++t) item_owners.push_back(neg);
        for (int t = 0; t < 13; ++t) item_owners.push_back({r_agent[j]});
        cert.ranges.push_back({"variable " + std::to_string(j + 1), begin,
                               static_cast<int>(item_owners.size())});
        if (++gadget < m + n) add_isolation(gadget);
    }

    DiscreteInstance inst;
    inst.items = static_cast<int>(item_owners.size());
    inst.values.assign(next_agent, std::vector<Rat>(inst.items, 0));
    for (int t = 0; t < inst.items; ++t)
        for (int a : item_owners[t]) inst.values[a][t] = 1;
    return {inst, cert};
}

DiscreteAllocation witness_items_epsef(const Formula3SAT& f, const std::vector<bool>& assignment) {
    f.validate();
    int m = f.num_clauses(), n = f.variables;
    std::vector<int> sad = sad_positions(f, assignment);

    std::vector<int> cuts;
    std::vector<int> order;
    int next_agent = 0;
    int offset = 0;
    int gadget = 0;

    auto maybe_isolation = [&]() {
        if (++gadget >= m + n) return;
        // cut after the first item, then every two items; the five middle
        // pieces go to the gadget's agents, the flanks merge outward
        for (int c : {1, 3, 5, 7, 9, 11}) cuts.push_back(offset + c);
        for (int t = 0; t < 5; ++t) order.push_back(next_agent + t);
        next_agent += 5;
        offset += 13;
    };

    for (int i = 0; i < m; ++i) {
        int lo = 0, hi = 0;
        switch (sad[i]) {
            case 1: lo = 1; hi = 5; break;
            case 2: lo = 4; hi = 5; break;
            case 3: lo = 4; hi = 8; break;
        }
        cuts.push_back(offset + 3 * lo);
        cuts.push_back(offset + 3 * hi);
        order.push_back(next_agent);
        order.push_back(next_agent + 1);
        order.push_back(next_agent + 2);
        next_agent += 3;
        offset += 27;
        maybe_isolation();
    }
    for (int j = 0; j < n; ++j) {
        cuts.push_back(offset + (assignment[j] ? 15 : 19));
        order.push_back(next_agent);      // L_j
        order.push_back(next_agent + 1);  // R_j
        next_agent += 2;
        offset += 34;
        maybe_isolation();
    }

    DiscreteAllocation alloc;
    alloc.cuts = cuts;
    alloc.order = order;
    return alloc;
}

// --- 3-PARTITION to items --------------------------------------------------

namespace {

void check_parts(const ThreePartitionInput& in, const std::vector<std::array<int, 3>>& parts) {
    if (static_cast<int>(parts.size()) != in.n())
        throw InvalidInstanceError("partition must have n triples");
    std::vector<bool> used(in.x.size(), false);
    for (const auto& p : parts) {
        long sum = 0;
        for (int idx : p) {
            if (idx < 0 || idx >= static_cast<int>(in.x.size()) || used[idx])
                throw InvalidInstanceError("partition reuses or misses an index");
            used[idx] = true;
            sum += in.x[idx];
        }
        if (sum != in.B()) throw InvalidInstanceError("triple does not sum to B");
    }
}

}  // namespace

std::pair<DiscreteInstance, GadgetCertificate> gen_items_prop_3part(const ThreePartitionInput& in) {
    in.validate();
    long n = in.n(), B = in.B();
    long k = 4 * B;
    long items = n * (B + 1) + 4 * n * k * k;
    long agents = 4 * n * (k + 1);

    GadgetCertificate cert;
    cert.kind = "items-3partition-prop";
    cert.epsilon = 0;
    cert.scale = 1;
    for (long s = 0; s < n; ++s) cert.agent_names.push_back("special " + std::to_string(s + 1));
    for (size_t i = 0; i < in.x.size(); ++i)
        cert.agent_names.push_back("normal " + std::to_string(i + 1));
    for (long d = 0; d < 4 * n * k; ++d)
        cert.agent_names.push_back("dummy " + std::to_string(d + 1));
    for (long b = 0; b < n; ++b)
        cert.ranges.push_back({"block " + std::to_string(b + 1),
                               static_cast<int>(b * (B + 1)),
                               static_cast<int>((b + 1) * (B + 1))});
    cert.ranges.push_back({"dummy region", static_cast<int>(n * (B + 1)),
                           static_cast<int>(items)});

    DiscreteInstance inst;
    inst.items = static_cast<int>(items);
    inst.values.assign(agents, std::vector<Rat>(inst.items, 0));
    for (long s = 0; s < n; ++s) inst.values[s][s * (B + 1)] = 1;  // special items lead blocks
    for (size_t i = 0; i < in.x.size(); ++i) {
        long count = agents * in.x[i];
        for (long t = 0; t < count; ++t) inst.values[n + i][t] = 1;
    }
    for (long d = 0; d < 4 * n * k; ++d)
        for (long t = n * (B + 1); t < items; ++t) inst.values[n + 3 * n + d][t] = 1;
    return {inst, cert};
}

DiscreteAllocation witness_items_prop_3part(const ThreePartitionInput& in,
                                            const std::vector<std::array<int, 3>>& parts) {
    in.validate();
    check_parts(in, parts);
    long n = in.n(), B = in.B(), k = 4 * B;

    std::vector<std::pair<int, long>> segs;
    for (long b = 0; b < n; ++b) {
        segs.push_back({static_cast<int>(b), 1});  // special agent, special item
        for (int idx : parts[b]) segs.push_back({static_cast<int>(n + idx), in.x[idx]});
    }
    for (long d = 0; d < 4 * n * k; ++d) segs.push_back({static_cast<int>(n + 3 * n + d), k});

    DiscreteAllocation alloc;
    long total = 0;
    for (size_t s = 0; s < segs.size(); ++s) {
        total += segs[s].second;
        alloc.order.push_back(segs[s].first);
        if (s + 1 < segs.size()) alloc.cuts.push_back(static_cast<int>(total));
    }
    return alloc;
}

std::pair<DiscreteInstance, GadgetCertificate> gen_items_equit_3part(
    const ThreePartitionInput& in) {
    in.validate();
    ThreePartitionInput use = in;
    long n = use.n();
    if (*std::min_element(use.x.begin(), use.x.end()) <= n)
        for (long& v : use.x) v *= n;  // scaling by n preserves solutions
    long B = use.B();
    long K = n * B;

    GadgetCertificate cert;
    cert.kind = "items-3partition-equit";
    cert.epsilon = 0;
    cert.scale = 1;

    long kblocks = B + n;  // B in the left region, one per right-region block
    long items = B * K + n * (K + B);
    long agents = kblocks * K + 3 * n;

    DiscreteInstance inst;
    inst.items = static_cast<int>(items);
    inst.values.assign(agents, std::vector<Rat>(inst.items, 0));

    long item = 0;
    long agent = 0;
    auto add_kblock = [&](const std::string& name) {
        cert.ranges.push_back({name, static_cast<int>(item), static_cast<int>(item + K)});
        for (long t = 0; t < K; ++t) {
            cert.agent_names.push_back(name + " agent " + std::to_string(t + 1));
            for (long u = 0; u < K; ++u) inst.values[agent][item + u] = 1;
            ++agent;
        }
        item += K;
    };
    for (long b = 0; b < B; ++b) add_kblock("left K-block " + std::to_string(b + 1));
    for (long b = 0; b < n; ++b) {
        add_kblock("right K-block " + std::to_string(b + 1));
        cert.ranges.push_back({"right free " + std::to_string(b + 1), static_cast<int>(item),
                               static_cast<int>(item + B)});
        item += B;
    }
    for (size_t i = 0; i < use.x.size(); ++i) {
        cert.agent_names.push_back("a_" + std::to_string(i + 1));
        for (long t = items - K * use.x[i]; t < items; ++t) inst.values[agent][t] = 1;
        ++agent;
    }
    return {inst, cert};
}

DiscreteAllocation witness_items_equit_3part(const ThreePartitionInput& in,
                                             const std::vector<std::array<int, 3>>& parts) {
    in.validate();
    ThreePartitionInput use = in;
    long n = use.n();
    if (*std::min_element(use.x.begin(), use.x.end()) <= n)
        for (long& v : use.x) v *= n;
    check_parts(use, parts);
    long B = use.B(), K = n * B;

    std::vector<std::pair<long, long>> segs;  // (agent, count)
    long agent = 0;
    for (long b = 0; b < B; ++b)
        for (long t = 0; t < K; ++t) segs.push_back({agent++, 1});
    long a_base = (B + n) * K;
    for (long b = 0; b < n; ++b) {
        for (long t = 0; t < K; ++t) segs.push_back({agent++, 1});
        for (int idx : parts[b]) segs.push_back({a_base + idx, use.x[idx]});
    }

    DiscreteAllocation alloc;
    long total = 0;
    for (size_t s = 0; s < segs.size(); ++s) {
        total += segs[s].second;
        alloc.order.push_back(static_cast<int>(segs[s].first));
        if (s + 1 < segs.size()) alloc.cuts.push_back(static_cast<int>(total));
    }
    return alloc;
}

// --- clause gadget certification -------------------------------------------

ClauseGadgetReport verify_clause_gadget_property() {
    // standalone clause gadget on [0,9], rescaled to the unit cake
    CakeInstance inst;
    for (int k = 0; k < 3; ++k) {
        std::vector<Block> bs;
        for (int t : {0, 3, 6}) {
            Rat u = k + t;
            bs.push_back({(u + rat(19, 50)) / 9, (u + rat(31, 50)) / 9, 1});
        }
        inst.valuations.emplace_back(bs);
    }
    std::vector<Rat> grid = breakpoint_grid(inst);
    int cells = static_cast<int>(grid.size()) - 1;

    ClauseGadgetReport report;
    report.max_min_value = 0;
    std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    for (int c1 = 0; c1 < cells; ++c1) {
        for (int c2 = c1; c2 < cells; ++c2) {
            // piece values are linear in the cut positions within a cell pair
            std::array<Rat, 3> h1, h2, base1, base2;
            for (int a = 0; a < 3; ++a) {
                const auto& v = inst.valuations[a];
                base1[a] = v.eval(0, grid[c1]);
                h1[a] = v.eval(grid[c1], grid[c1 + 1]) / (grid[c1 + 1] - grid[c1]);
                base2[a] = v.eval(0, grid[c2]);
                h2[a] = v.eval(grid[c2], grid[c2 + 1]) / (grid[c2 + 1] - grid[c2]);
            }
            for (const auto& perm : perms) {
                // maximize t  s.t.  value of agent perm[p] on piece p >= t
                LinearProgram lp;
                lp.objective = {0, 0, -1};  // vars x1, x2, t
                auto add = [&](std::vector<Rat> coeffs, Rat rhs) {
                    lp.constraints.push_back({std::move(coeffs), LinearProgram::Rel::LE,
                                              std::move(rhs)});
                };
                // piece 1 = [0,x1]: base1 + h1 (x1 - lo1) >= t
                add({-h1[perm[0]], 0, 1}, base1[perm[0]] - h1[perm[0]] * grid[c1]);
                // piece 2 = [x1,x2]
                add({h1[perm[1]], -h2[perm[1]], 1},
                    base2[perm[1]] - h2[perm[1]] * grid[c2] -
                        (base1[perm[1]] - h1[perm[1]] * grid[c1]));
                // piece 3 = [x2,1]
                add({0, h2[perm[2]], 1},
                    1 - (base2[perm[2]] - h2[perm[2]] * grid[c2]));
                add({1, -1, 0}, 0);  // x1 <= x2
                lp.bound(0, grid[c1], grid[c1 + 1]);
                lp.bound(1, grid[c2], grid[c2 + 1]);
                lp.bound(2, Rat(0), Rat(1));
                auto res = solve_lp(lp);
                ++report.classes;
                if (res.status == LPStatus::OPTIMAL)
                    report.max_min_value = std::max(report.max_min_value, Rat(-res.objective));
            }
        }
    }
    // convert from normalized units (0.72 in-gadget total) back to the
    // construction's units, where sadness means value <= 6/25
    report.max_min_value *= rat(18, 25);
    report.bound_holds = report.max_min_value <= rat(6, 25);

    // the two literal regions of a variable gadget cannot both be split by
    // one cut: their value-blocks are disjoint
    Rat pos_l = 1 + rat(9, 25), pos_r = 1 + rat(16, 25);
    Rat neg_l = 2 + rat(9, 25), neg_r = 2 + rat(16, 25);
    report.variable_regions_disjoint = pos_r <= neg_l && pos_l < pos_r && neg_l < neg_r;
    return report;
}

}  // namespace fairslice
