#include "fairslice/midpoint_protocol.hpp"

#include <algorithm>
#include <optional>

namespace fairslice {

namespace {

struct Iv {
    Rat l, r;
};

bool degenerate(const Iv& a) { return a.l == a.r; }

// Maximal subintervals of [rl, rr] not covered by any non-degenerate interval
// in `taken`.
std::vector<Iv> free_components(const Rat& rl, const Rat& rr, const std::vector<Iv>& taken) {
    std::vector<Iv> blocks;
    for (const Iv& t : taken) {
        if (degenerate(t)) continue;
        Rat lo = std::max(t.l, rl);
        Rat hi = std::min(t.r, rr);
        if (lo < hi) blocks.push_back({lo, hi});
    }
    std::sort(blocks.begin(), blocks.end(), [](const Iv& a, const Iv& b) { return a.l < b.l; });
    std::vector<Iv> out;
    Rat cursor = rl;
    for (const Iv& b : blocks) {
        if (cursor < b.l) out.push_back({cursor, b.l});
        cursor = std::max(cursor, b.r);
    }
    if (cursor < rr) out.push_back({cursor, rr});
    return out;
}

bool touches_assigned(const Rat& p, const std::vector<Iv>& taken) {
    for (const Iv& t : taken)
        if (!degenerate(t) && (t.l == p || t.r == p)) return true;
    return false;
}

bool contains(const Iv& a, const Rat& x) { return a.l <= x && x <= a.r; }

bool inside_some(const Iv& i, const std::vector<Iv>& comps) {
    for (const Iv& c : comps)
        if (c.l <= i.l && i.r <= c.r) return true;
    return false;
}

// Leftmost interval wins; equal intervals are impossible for the uses below
// except in Case 3, where the caller breaks the tie on ell.
bool leftmost_lt(const Iv& a, const Iv& b) { return a.l < b.l || (a.l == b.l && a.r < b.r); }

}  // namespace

std::pair<ContiguousAllocation, std::vector<CaseTag>> run_alg2(const CakeInstance& inst) {
    int n = inst.agents();
    for (const auto& v : inst.valuations)
        if (!v.is_uniform_single_interval())
            throw InvalidInstanceError("alg2 requires uniform single-interval valuations");

    // Processing order: non-decreasing |R_i|, ties by index.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ra = inst.valuations[a].uniform_interval();
        const auto& rb = inst.valuations[b].uniform_interval();
        return (ra.right - ra.left) < (rb.right - rb.left);
    });

    std::vector<Iv> piece(n);     // assigned interval per agent (0-based id)
    std::vector<bool> has(n, false);
    std::vector<CaseTag> trace;

    for (int pos = 0; pos < n; ++pos) {
        int a = order[pos];
        const auto& R = inst.valuations[a].uniform_interval();
        Rat mid = inst.valuations[a].midpoint();
        Rat len = (R.right - R.left) / 4;  // length carrying value exactly 1/4

        std::vector<Iv> taken;
        for (int j = 0; j < n; ++j)
            if (has[j]) taken.push_back(piece[j]);
        std::vector<Iv> comps = free_components(R.left, R.right, taken);

        CaseTag tag;
        tag.agent = a;
        std::optional<Iv> chosen;

        // Case 1: a restrained quarter-value interval containing mid.
        {
            std::optional<Iv> best;
            for (const Iv& c : comps) {
                if (c.r - c.l < len) continue;
                Iv cand[2] = {{c.l, c.l + len}, {c.r - len, c.r}};
                bool anchored[2] = {touches_assigned(c.l, taken), touches_assigned(c.r, taken)};
                for (int s = 0; s < 2; ++s) {
                    if (!anchored[s] || !contains(cand[s], mid)) continue;
                    if (!best || leftmost_lt(cand[s], *best)) best = cand[s];
                }
            }
            if (best) {
                tag.kind = CaseKind::Case1;
                chosen = best;
            }
        }

        // Case 2: any quarter-value interval containing mid fits; anchor an
        // endpoint at mid(k) for the first later agent k whose midpoint is
        // within value 1/4 of ours.
        if (!chosen) {
            const Iv* home = nullptr;
            for (const Iv& c : comps)
                if (contains(c, mid) && c.r - c.l >= len) home = &c;
            if (home) {
                tag.kind = CaseKind::Case2;
                for (int q = pos + 1; q < n; ++q) {
                    int j = order[q];
                    Rat mj = inst.valuations[j].midpoint();
                    Rat lo = std::min(mid, mj), hi = std::max(mid, mj);
                    if (inst.valuations[a].eval(lo, hi) <= rat(1, 4)) tag.s_set.push_back(j);
                }
                if (!tag.s_set.empty()) {
                    tag.k = tag.s_set.front();
                    Rat mk = inst.valuations[tag.k].midpoint();
                    Iv cand[2] = {{mk - len, mk}, {mk, mk + len}};
                    for (int s = 0; s < 2 && !chosen; ++s)
                        if (contains(cand[s], mid) && inside_some(cand[s], comps)) chosen = cand[s];
                }
                if (!chosen) {
                    // Centered on mid, shifted to stay within the free interval.
                    tag.fallback = true;
                    Rat l = mid - len / 2;
                    if (l < home->l) l = home->l;
                    Rat r = l + len;
                    if (r > home->r) {
                        r = home->r;
                        l = r - len;
                    }
                    chosen = Iv{l, r};
                }
            }
        }

        // Case 3: mid lies in someone's piece; take a quarter-value interval
        // flush against that piece (leftmost qualifying interval).
        if (!chosen) {
            std::optional<Iv> best;
            for (int q = 0; q < pos; ++q) {
                int j = order[q];
                if (!contains({piece[j].l, piece[j].r}, mid)) continue;
                Iv cand[2] = {{piece[j].l - len, piece[j].l}, {piece[j].r, piece[j].r + len}};
                for (const Iv& c : cand) {
                    if (!inside_some(c, comps)) continue;
                    if (!best || leftmost_lt(c, *best)) {
                        best = c;
                        tag.ell = j;
                    }
                }
            }
            if (best) {
                tag.kind = CaseKind::Case3;
                chosen = best;
            }
        }

        // Case 4: largest restrained interval of value at most 1/4 (ties:
        // leftmost).  With nothing assigned nearby the free-interval ends
        // stand in as anchors; with no free cake at all the piece degenerates
        // to a point.
        if (!chosen) {
            tag.kind = CaseKind::Case4;
            std::optional<Iv> best;
            bool any_anchor = false;
            for (const Iv& c : comps)
                if (touches_assigned(c.l, taken) || touches_assigned(c.r, taken)) any_anchor = true;
            for (const Iv& c : comps) {
                Rat w = std::min(len, Rat(c.r - c.l));
                Iv cand[2] = {{c.l, c.l + w}, {c.r - w, c.r}};
                bool anchored[2] = {touches_assigned(c.l, taken), touches_assigned(c.r, taken)};
                for (int s = 0; s < 2; ++s) {
                    if (any_anchor && !anchored[s]) continue;
                    if (!best || (cand[s].r - cand[s].l) > (best->r - best->l) ||
                        ((cand[s].r - cand[s].l) == (best->r - best->l) && leftmost_lt(cand[s], *best)))
                        best = cand[s];
                }
            }
            chosen = best ? *best : Iv{R.left, R.left};
        }

        tag.left = chosen->l;
        tag.right = chosen->r;
        piece[a] = *chosen;
        has[a] = true;
        trace.push_back(tag);
    }

    // Extension phase.  Sort pieces left to right; if two are adjacent, the
    // pieces up to the left one grow leftward and the rest grow rightward.
    // Otherwise every piece grows rightward to the next piece (the leftmost
    // also claims the left end of the cake).
    std::vector<int> by_pos(n);
    for (int i = 0; i < n; ++i) by_pos[i] = i;
    std::stable_sort(by_pos.begin(), by_pos.end(), [&](int x, int y) {
        return piece[x].l < piece[y].l || (piece[x].l == piece[y].l && piece[x].r < piece[y].r);
    });

    int q = -1;  // leftmost adjacent pair (by_pos[q], by_pos[q+1])
    for (int j = 0; j + 1 < n; ++j)
        if (piece[by_pos[j]].r == piece[by_pos[j + 1]].l) {
            q = j;
            break;
        }

    ContiguousAllocation alloc;
    for (int j = 0; j < n; ++j) alloc.order.push_back(by_pos[j]);
    for (int j = 0; j + 1 < n; ++j) {
        if (q >= 0 && j <= q)
            alloc.cuts.push_back(piece[by_pos[j]].r);
        else
            alloc.cuts.push_back(piece[by_pos[j + 1]].l);
    }
    return {alloc, trace};
}

}  // namespace fairslice
