#include "fairslice/ratlp.hpp"

#include <stdexcept>

namespace fairslice {

void LinearProgram::bound(int var, std::optional<Rat> lo, std::optional<Rat> hi) {
    if (static_cast<int>(lower.size()) <= var) lower.resize(var + 1);
    if (static_cast<int>(upper.size()) <= var) upper.resize(var + 1);
    lower[var] = std::move(lo);
    upper[var] = std::move(hi);
}

namespace {

// Dense simplex tableau over equalities T x = rhs with x >= 0 and a basis of
// size m.  Pivoting follows Bland's rule throughout, so cycling is impossible.
struct Tableau {
    int m = 0, cols = 0;
    std::vector<std::vector<Rat>> row;  // m rows, `cols` columns
    std::vector<Rat> rhs;               // length m, kept >= 0
    std::vector<int> basis;             // column basic in each row

    void pivot(int r, int c) {
        Rat p = row[r][c];
        for (int j = 0; j < cols; ++j) row[r][j] /= p;
        rhs[r] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == r || row[i][c] == 0) continue;
            Rat f = row[i][c];
            for (int j = 0; j < cols; ++j) row[i][j] -= f * row[r][j];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }

    // Minimizes cost over columns marked usable.  Returns false on
    // unboundedness.  `cost` has length `cols`.
    bool minimize(const std::vector<Rat>& cost, const std::vector<bool>& usable) {
        for (;;) {
            // reduced costs from the current basis
            std::vector<Rat> y(m);  // multipliers: cost of basic var per row
            for (int i = 0; i < m; ++i) y[i] = cost[basis[i]];
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (!usable[j]) continue;
                Rat red = cost[j];
                for (int i = 0; i < m; ++i) red -= y[i] * row[i][j];
                if (red < 0) enter = j;  // Bland: first improving column
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (row[i][enter] <= 0) continue;
                Rat ratio = rhs[i] / row[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
    int nv = lp.vars();
    for (const auto& c : lp.constraints)
        if (static_cast<int>(c.coeffs.size()) != nv)
            throw std::invalid_argument("constraint dimension mismatch");

    auto lower_of = [&](int j) -> std::optional<Rat> {
        return j < static_cast<int>(lp.lower.size()) ? lp.lower[j] : std::nullopt;
    };
    auto upper_of = [&](int j) -> std::optional<Rat> {
        return j < static_cast<int>(lp.upper.size()) ? lp.upper[j] : std::nullopt;
    };

    // Shift lower-bounded variables to start at 0; split free variables into
    // a difference of two nonnegative ones.  Upper bounds become rows.
    // col(j) = first standard column of variable j; free vars use col, col+1.
    std::vector<int> col(nv);
    std::vector<bool> is_free(nv);
    std::vector<Rat> shift(nv);
    int std_vars = 0;
    for (int j = 0; j < nv; ++j) {
        col[j] = std_vars;
        auto lo = lower_of(j);
        is_free[j] = !lo.has_value();
        shift[j] = lo.value_or(Rat(0));
        std_vars += is_free[j] ? 2 : 1;
    }

    struct Row {
        std::vector<Rat> a;
        Rat b;
        bool eq;
    };
    std::vector<Row> rows;
    auto add_le = [&](const std::vector<Rat>& coeffs, Rat b, bool eq) {
        Row r{std::vector<Rat>(std_vars, Rat(0)), std::move(b), eq};
        for (int j = 0; j < nv; ++j) {
            if (coeffs[j] == 0) continue;
            r.a[col[j]] += coeffs[j];
            if (is_free[j]) r.a[col[j] + 1] -= coeffs[j];
            r.b -= coeffs[j] * shift[j];
        }
        rows.push_back(std::move(r));
    };
    for (const auto& c : lp.constraints)
        add_le(c.coeffs, c.rhs, c.rel == LinearProgram::Rel::EQ);
    for (int j = 0; j < nv; ++j)
        if (auto hi = upper_of(j)) {
            std::vector<Rat> e(nv, Rat(0));
            e[j] = 1;
            add_le(e, *hi, false);
        }

    int m = static_cast<int>(rows.size());
    // columns: standard vars | one slack per inequality | one artificial per row
    int n_slack = 0;
    for (const auto& r : rows)
        if (!r.eq) ++n_slack;
    Tableau t;
    t.m = m;
    t.cols = std_vars + n_slack + m;
    t.row.assign(m, std::vector<Rat>(t.cols, Rat(0)));
    t.rhs.resize(m);
    t.basis.resize(m);
    int slack_at = std_vars;
    for (int i = 0; i < m; ++i) {
        Rat sgn = rows[i].b < 0 ? Rat(-1) : Rat(1);
        for (int j = 0; j < std_vars; ++j) t.row[i][j] = sgn * rows[i].a[j];
        t.rhs[i] = sgn * rows[i].b;
        if (!rows[i].eq) t.row[i][slack_at++] = sgn;
        t.row[i][std_vars + n_slack + i] = 1;
        t.basis[i] = std_vars + n_slack + i;
    }

    // Phase 1: drive the artificials to zero.
    std::vector<Rat> cost1(t.cols, Rat(0));
    for (int i = 0; i < m; ++i) cost1[std_vars + n_slack + i] = 1;
    std::vector<bool> usable(t.cols, true);
    t.minimize(cost1, usable);  // bounded by construction (cost >= 0)
    Rat phase1 = 0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= std_vars + n_slack) phase1 += t.rhs[i];
    if (phase1 != 0) return {LPStatus::INFEASIBLE, {}, Rat(0)};

    // Pivot any artificial still (degenerately) basic out of the basis.
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < std_vars + n_slack) continue;
        int c = -1;
        for (int j = 0; j < std_vars + n_slack && c < 0; ++j)
            if (t.row[i][j] != 0) c = j;
        if (c >= 0) t.pivot(i, c);
        // else: redundant row; harmless to leave in place
    }
    for (int j = std_vars + n_slack; j < t.cols; ++j) usable[j] = false;

    // Phase 2: the real objective.
    std::vector<Rat> cost2(t.cols, Rat(0));
    for (int j = 0; j < nv; ++j) {
        cost2[col[j]] += lp.objective[j];
        if (is_free[j]) cost2[col[j] + 1] -= lp.objective[j];
    }
    if (!t.minimize(cost2, usable)) return {LPStatus::UNBOUNDED, {}, Rat(0)};

    std::vector<Rat> std_val(t.cols, Rat(0));
    for (int i = 0; i < m; ++i) std_val[t.basis[i]] = t.rhs[i];
    LPResult res;
    res.status = LPStatus::OPTIMAL;
    res.solution.resize(nv);
    for (int j = 0; j < nv; ++j) {
        res.solution[j] = shift[j] + std_val[col[j]];
        if (is_free[j]) res.solution[j] -= std_val[col[j] + 1];
    }
    res.objective = 0;
    for (int j = 0; j < nv; ++j) res.objective += lp.objective[j] * res.solution[j];
    return res;
}

}  // namespace fairslice
