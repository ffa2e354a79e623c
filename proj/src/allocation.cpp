#include "fairslice/allocation.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairslice {

int ContiguousAllocation::piece_of(int agent) const {
    for (int j = 0; j < agents(); ++j)
        if (order[j] == agent) return j;
    throw std::invalid_argument("agent not present in allocation order");
}

bool ContiguousAllocation::well_formed() const {
    int n = agents();
    if (static_cast<int>(cuts.size()) != n - 1) return false;
    Rat prev = 0;
    for (const Rat& x : cuts) {
        if (x < prev || x > 1) return false;
        prev = x;
    }
    std::vector<bool> seen(n, false);
    for (int a : order) {
        if (a < 0 || a >= n || seen[a]) return false;
        seen[a] = true;
    }
    return true;
}

EnvyReport envy_report(const CakeInstance& inst, const ContiguousAllocation& alloc) {
    int n = inst.agents();
    if (alloc.agents() != n || !alloc.well_formed())
        throw std::invalid_argument("allocation does not match instance");
    // values[i][j] = v_i(piece j)
    std::vector<std::vector<Rat>> values(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            values[i][j] = inst.valuations[i].eval(alloc.piece_left(j), alloc.piece_right(j));
    EnvyReport rep;
    rep.matrix.assign(n, std::vector<Rat>(n, Rat(0)));
    rep.max_envy = 0;
    bool first = true;
    std::vector<int> piece_of(n);
    for (int a = 0; a < n; ++a) piece_of[a] = alloc.piece_of(a);
    for (int i = 0; i < n; ++i) {
        int own = piece_of[i];
        for (int j = 0; j < n; ++j) {
            rep.matrix[i][j] = values[i][piece_of[j]] - values[i][own];
            if (first || rep.matrix[i][j] > rep.max_envy) {
                rep.max_envy = rep.matrix[i][j];
                first = false;
            }
        }
    }
    return rep;
}

bool is_eps_ef(const CakeInstance& inst, const ContiguousAllocation& alloc, const Rat& eps) {
    if (eps < 0) throw std::invalid_argument("negative epsilon");
    return envy_report(inst, alloc).max_envy <= eps;
}

}  // namespace fairslice
