#include "fairslice/exact_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "fairslice/ratlp.hpp"

namespace fairslice {

unsigned long search_limit() {
    if (const char* env = std::getenv("FAIRSLICE_LIMIT")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 2'000'000;
}

CellAssignment cells_for_cuts(const std::vector<Rat>& grid, const std::vector<Rat>& cuts) {
    CellAssignment cells;
    for (const Rat& x : cuts) {
        auto it = std::lower_bound(grid.begin(), grid.end(), x);
        if (it != grid.end() && *it == x) {
            cells.lo.push_back(x);  // pinned on a grid point
            cells.hi.push_back(x);
        } else {
            cells.lo.push_back(*std::prev(it));
            cells.hi.push_back(*it);
        }
    }
    return cells;
}

namespace {

// Linear form coef . x + c over the cut variables x_0..x_{n-2}.
struct LinForm {
    std::vector<Rat> coef;
    Rat c;
};

// eval extended to reversed bounds as a signed measure; reference anchors of
// adjacent cells may cross when a pinned cut sits inside a neighbour's cell.
Rat signed_eval(const PiecewiseConstantValuation& v, const Rat& a, const Rat& b) {
    return a <= b ? v.eval(a, b) : Rat(-v.eval(b, a));
}

// value of each piece to each agent as a linear function of the cuts, valid
// while every cut stays inside its cell.
std::vector<std::vector<LinForm>> piece_value_forms(const CakeInstance& inst,
                                                    const CellAssignment& cells) {
    int n = inst.agents();
    int nc = cells.cuts();
    std::vector<std::vector<LinForm>> forms(n, std::vector<LinForm>(n));
    for (int i = 0; i < n; ++i) {
        const auto& v = inst.valuations[i];
        std::vector<Rat> h(nc);  // density on each cut's cell
        for (int j = 0; j < nc; ++j)
            h[j] = cells.hi[j] > cells.lo[j]
                       ? Rat(v.eval(cells.lo[j], cells.hi[j]) / (cells.hi[j] - cells.lo[j]))
                       : Rat(0);
        for (int p = 0; p < n; ++p) {
            LinForm f{std::vector<Rat>(nc, Rat(0)), Rat(0)};
            Rat left_anchor = p == 0 ? Rat(0) : cells.lo[p - 1];
            Rat right_anchor = p == n - 1 ? Rat(1) : cells.lo[p];
            f.c = signed_eval(v, left_anchor, right_anchor);
            if (p < n - 1) {
                f.coef[p] += h[p];
                f.c -= h[p] * cells.lo[p];
            }
            if (p > 0) {
                f.coef[p - 1] -= h[p - 1];
                f.c += h[p - 1] * cells.lo[p - 1];
            }
            forms[i][p] = f;
        }
    }
    return forms;
}

// envy constraints "v_i(piece q) - v_i(own piece) <= bound" as rows over the
// cut variables; `order` maps piece -> agent.
std::vector<LinearProgram::Constraint> envy_rows(const std::vector<std::vector<LinForm>>& forms,
                                                 const std::vector<int>& order, const Rat& bound) {
    int n = static_cast<int>(order.size());
    int nc = n - 1;
    std::vector<int> own_piece(n);
    for (int p = 0; p < n; ++p) own_piece[order[p]] = p;
    std::vector<LinearProgram::Constraint> rows;
    for (int i = 0; i < n; ++i) {
        int p = own_piece[i];
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            LinearProgram::Constraint c;
            c.coeffs.resize(nc);
            for (int j = 0; j < nc; ++j) c.coeffs[j] = forms[i][q].coef[j] - forms[i][p].coef[j];
            c.rel = LinearProgram::Rel::LE;
            c.rhs = bound + forms[i][p].c - forms[i][q].c;
            rows.push_back(std::move(c));
        }
    }
    return rows;
}

void add_cell_and_order_rows(LinearProgram& lp, const CellAssignment& cells) {
    int nc = cells.cuts();
    for (int j = 0; j < nc; ++j) lp.bound(j, cells.lo[j], cells.hi[j]);
    for (int j = 0; j + 1 < nc; ++j) {
        LinearProgram::Constraint c;
        c.coeffs.assign(nc, Rat(0));
        c.coeffs[j] = 1;
        c.coeffs[j + 1] = -1;
        c.rel = LinearProgram::Rel::LE;
        c.rhs = 0;
        lp.constraints.push_back(std::move(c));
    }
}

std::vector<std::vector<int>> orders_satisfying(int n, const EFConstraint& cons) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        switch (cons.kind) {
            case EFConstraint::Kind::AGENT_LEFTMOST:
                ok = perm[0] == cons.agents[0];
                break;
            case EFConstraint::Kind::PREFIX_ORDER:
            case EFConstraint::Kind::FULL_ORDER:
                for (size_t t = 0; t < cons.agents.size(); ++t)
                    if (t >= perm.size() || perm[t] != cons.agents[t]) ok = false;
                break;
            default:
                break;
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

mpz_class binomial(unsigned long a, unsigned long b) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), a, b);
    return z;
}

}  // namespace

MinEnvyResult min_envy_for_cells(const CakeInstance& inst, const std::vector<int>& order,
                                 const CellAssignment& cells) {
    int n = inst.agents();
    if (n == 1) return {true, Rat(0), {}};
    int nc = n - 1;
    auto forms = piece_value_forms(inst, cells);

    // variables: x_0..x_{nc-1}, then z (free)
    LinearProgram lp;
    lp.objective.assign(nc + 1, Rat(0));
    lp.objective[nc] = 1;
    add_cell_and_order_rows(lp, cells);
    for (auto& row : lp.constraints) row.coeffs.resize(nc + 1, Rat(0));
    for (auto row : envy_rows(forms, order, Rat(0))) {
        row.coeffs.push_back(rat(-1));  // ... - z <= rhs
        lp.constraints.push_back(std::move(row));
    }

    auto res = solve_lp(lp);
    if (res.status != LPStatus::OPTIMAL) return {};
    MinEnvyResult out;
    out.feasible = true;
    out.z = res.objective;
    out.cuts.assign(res.solution.begin(), res.solution.begin() + nc);
    return out;
}

std::optional<ContiguousAllocation> exactify(const CakeInstance& inst,
                                             const ContiguousAllocation& approx) {
    auto cells = cells_for_cuts(breakpoint_grid(inst), approx.cuts);
    auto res = min_envy_for_cells(inst, approx.order, cells);
    if (!res.feasible || res.z > 0) return std::nullopt;
    return ContiguousAllocation{res.cuts, approx.order};
}

Rat precision_bound(const PrecisionParams& p) {
    unsigned long exp =
        p.remark_mode ? 4ul * p.n : (6ul * p.k + 14ul) * static_cast<unsigned long>(p.n);
    return 1 / rat_pow(p.M, exp);
}

std::optional<ContiguousAllocation> ef_with_fixed_all_cuts(const CakeInstance& inst,
                                                           const std::vector<Rat>& cuts) {
    int n = inst.agents();
    // agent i may take piece p only when p is one of her most valuable pieces
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    ContiguousAllocation shape{cuts, std::vector<int>(n, 0)};
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> val(n);
        Rat best = 0;
        for (int p = 0; p < n; ++p) {
            val[p] = inst.valuations[i].eval(shape.piece_left(p), shape.piece_right(p));
            if (val[p] > best) best = val[p];
        }
        for (int p = 0; p < n; ++p) edge[i][p] = val[p] == best;
    }

    std::vector<int> piece_owner(n, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int i, std::vector<bool>& seen) {
        for (int p = 0; p < n; ++p) {
            if (!edge[i][p] || seen[p]) continue;
            seen[p] = true;
            if (piece_owner[p] < 0 || augment(piece_owner[p], seen)) {
                piece_owner[p] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!augment(i, seen)) return std::nullopt;
    }
    return ContiguousAllocation{cuts, piece_owner};
}

namespace {

// Enumerates non-decreasing cell tuples (with optional pinned cuts) and calls
// `emit`; returns false when `emit` asks to stop.
bool enumerate_cell_tuples(int nc, const std::vector<Rat>& grid,
                           const std::vector<std::optional<Rat>>& pin,
                           const std::function<bool(const CellAssignment&)>& emit) {
    int t_cells = static_cast<int>(grid.size()) - 1;
    CellAssignment cells;
    cells.lo.assign(nc, Rat(0));
    cells.hi.assign(nc, Rat(0));
    std::function<bool(int, int)> rec = [&](int j, int min_cell) -> bool {
        if (j == nc) return emit(cells);
        Rat prev_lo = j == 0 ? Rat(0) : cells.lo[j - 1];
        if (pin[j]) {
            if (prev_lo > *pin[j]) return true;  // cannot order; skip branch
            cells.lo[j] = cells.hi[j] = *pin[j];
            return rec(j + 1, min_cell);
        }
        for (int t = min_cell; t < t_cells; ++t) {
            if (prev_lo > grid[t + 1]) continue;
            cells.lo[j] = grid[t];
            cells.hi[j] = grid[t + 1];
            if (!rec(j + 1, t)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

std::vector<std::vector<std::optional<Rat>>> pin_choices(int nc, const EFConstraint& cons) {
    std::vector<std::vector<std::optional<Rat>>> out;
    std::vector<std::optional<Rat>> none(nc);
    switch (cons.kind) {
        case EFConstraint::Kind::CUT_AT:
            for (int j = 0; j < nc; ++j) {
                auto p = none;
                p[j] = cons.positions[0];
                out.push_back(p);
            }
            break;
        case EFConstraint::Kind::LEFTMOST_CUT_AT: {
            auto p = none;
            p[0] = cons.positions[0];
            out.push_back(p);
            break;
        }
        case EFConstraint::Kind::CUTS_AT: {
            int k = static_cast<int>(cons.positions.size());
            std::vector<int> idx(k);
            std::function<void(int, int)> rec = [&](int t, int start) {
                if (t == k) {
                    auto p = none;
                    for (int s = 0; s < k; ++s) p[idx[s]] = cons.positions[s];
                    out.push_back(p);
                    return;
                }
                for (int j = start; j <= nc - (k - t); ++j) {
                    idx[t] = j;
                    rec(t + 1, j + 1);
                }
            };
            rec(0, 0);
            break;
        }
        default:
            out.push_back(none);
    }
    return out;
}

}  // namespace

std::optional<ContiguousAllocation> decide_ef(const CakeInstance& inst,
                                              const EFConstraint& cons) {
    int n = inst.agents();
    if (cons.kind == EFConstraint::Kind::ALL_CUTS) {
        auto got = ef_with_fixed_all_cuts(inst, cons.positions);
        if (got && is_eps_ef(inst, *got, rat(0))) return got;
        return std::nullopt;
    }
    if (n == 1) return ContiguousAllocation{{}, {0}};
    int nc = n - 1;

    std::vector<Rat> grid = breakpoint_grid(inst);
    for (const Rat& x : cons.positions) {
        auto it = std::lower_bound(grid.begin(), grid.end(), x);
        if (it == grid.end() || *it != x) grid.insert(it, x);
    }

    auto orders = orders_satisfying(n, cons);
    auto pins = pin_choices(nc, cons);

    mpz_class space = binomial(grid.size() - 1 + nc - 1, nc) * orders.size() * pins.size();
    if (space > search_limit())
        throw ResourceLimitError("decide_ef search space " + space.get_str() +
                                 " exceeds limit " + std::to_string(search_limit()));

    for (const auto& order : orders) {
        for (const auto& pin : pins) {
            std::optional<ContiguousAllocation> found;
            enumerate_cell_tuples(nc, grid, pin, [&](const CellAssignment& cells) {
                auto res = min_envy_for_cells(inst, order, cells);
                if (res.feasible && res.z <= 0) {
                    found = ContiguousAllocation{res.cuts, order};
                    return false;  // stop
                }
                return true;
            });
            if (found) return found;
        }
    }
    return std::nullopt;
}

namespace {

// Grid {k*eps : k*eps <= 1} together with 1.
std::optional<Rat> grid_ceil(const Rat& x, const Rat& eps) {
    if (x > 1) return std::nullopt;
    if (x <= 0) return Rat(0);
    Rat g = Rat(rat_ceil(Rat(x / eps))) * eps;
    return g > 1 ? Rat(1) : g;
}

std::optional<Rat> grid_next(const Rat& g, const Rat& eps) {
    if (g == 1) return std::nullopt;
    Rat g2 = g + eps;
    return g2 > 1 ? Rat(1) : g2;
}

}  // namespace

std::optional<ContiguousAllocation> grid_eps_ef(const CakeInstance& inst, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("grid_eps_ef requires eps > 0");
    int n = inst.agents();
    if (n == 1) return ContiguousAllocation{{}, {0}};
    int nc = n - 1;
    std::vector<Rat> grid = breakpoint_grid(inst);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> orders;
    do orders.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    unsigned long budget = search_limit();
    unsigned long steps = 0;
    auto charge = [&](unsigned long c) {
        steps += c;
        if (steps > budget)
            throw ResourceLimitError("grid_eps_ef exceeded step limit " + std::to_string(budget));
    };

    std::optional<std::vector<Rat>> best;

    auto lex_known_worse = [&](const std::vector<Rat>& prefix, const Rat& g) {
        // candidate extends `prefix` + g; everything after is unconstrained.
        if (!best) return false;
        for (size_t s = 0; s < prefix.size(); ++s) {
            if (prefix[s] < (*best)[s]) return false;
            if (prefix[s] > (*best)[s]) return true;  // cannot happen after pruning
        }
        return g > (*best)[prefix.size()];
    };

    for (const auto& order : orders) {
        std::vector<std::optional<Rat>> nopin(nc);
        enumerate_cell_tuples(nc, grid, nopin, [&](const CellAssignment& cells) {
            auto forms = piece_value_forms(inst, cells);
            LinearProgram base;
            base.objective.assign(nc, Rat(0));
            add_cell_and_order_rows(base, cells);
            for (auto& row : envy_rows(forms, order, eps)) base.constraints.push_back(row);

            // lexicographically smallest grid tuple inside this class, found
            // by minimizing each cut in turn and rounding up to the grid,
            // backtracking when a later coordinate cannot be completed
            std::vector<Rat> prefix;
            std::function<bool()> descend = [&]() -> bool {
                int t = static_cast<int>(prefix.size());
                if (t == nc) return true;
                LinearProgram lp = base;
                for (int s = 0; s < t; ++s) {
                    LinearProgram::Constraint c;
                    c.coeffs.assign(nc, Rat(0));
                    c.coeffs[s] = 1;
                    c.rel = LinearProgram::Rel::EQ;
                    c.rhs = prefix[s];
                    lp.constraints.push_back(std::move(c));
                }
                lp.objective[t] = 1;
                charge(2);
                auto lo_res = solve_lp(lp);
                if (lo_res.status != LPStatus::OPTIMAL) return false;
                lp.objective[t] = -1;
                auto hi_res = solve_lp(lp);
                Rat hi = hi_res.solution[t];
                auto g = grid_ceil(lo_res.solution[t], eps);
                while (g && *g <= hi) {
                    if (lex_known_worse(prefix, *g)) return false;
                    prefix.push_back(*g);
                    if (descend()) return true;
                    prefix.pop_back();
                    g = grid_next(*g, eps);
                }
                return false;
            };
            if (descend() && (!best || prefix < *best)) best = prefix;
            return true;
        });
    }

    if (!best) return std::nullopt;
    for (const auto& order : orders) {
        ContiguousAllocation alloc{*best, order};
        if (is_eps_ef(inst, alloc, eps)) return alloc;
    }
    return std::nullopt;  // unreachable: some order certified `best`
}

}  // namespace fairslice
