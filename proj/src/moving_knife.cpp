#include "fairslice/moving_knife.hpp"

#include <algorithm>

namespace fairslice {

ContiguousAllocation run_alg1(const CakeInstance& inst) {
    int n = inst.agents();
    const Rat third = rat(1, 3);
    Rat knife = 0;
    std::vector<bool> remaining(n, true);
    // left endpoint of each assigned interval, in assignment order
    struct Assigned {
        int agent;
        Rat left;
        Rat right;
    };
    std::vector<Assigned> assigned;

    for (;;) {
        int j = -1;
        Rat best;
        for (int i = 0; i < n; ++i) {
            if (!remaining[i]) continue;
            if (inst.valuations[i].eval(knife, Rat(1)) < third) continue;
            Rat r = *inst.valuations[i].cut_query(knife, third);
            if (j < 0 || r < best) {
                j = i;
                best = r;
            }
        }
        if (j < 0) break;  // nobody left values the remainder at 1/3
        assigned.push_back({j, knife, best});
        knife = best;
        remaining[j] = false;
    }

    std::vector<int> leftover;
    for (int i = 0; i < n; ++i)
        if (remaining[i]) leftover.push_back(i);

    if (!leftover.empty()) {
        assigned.push_back({leftover.front(), knife, Rat(1)});
        leftover.erase(leftover.begin());
    } else {
        assigned.back().right = 1;  // [knife,1] merges with the last piece
    }

    ContiguousAllocation alloc;
    for (size_t p = 0; p < assigned.size(); ++p) {
        alloc.order.push_back(assigned[p].agent);
        if (p + 1 < assigned.size()) alloc.cuts.push_back(assigned[p].right);
    }
    // agents that never received cake get empty pieces at the right end
    for (int i : leftover) {
        alloc.cuts.push_back(1);
        alloc.order.push_back(i);
    }
    return alloc;
}

}  // namespace fairslice
