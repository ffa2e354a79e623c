#pragma once

#include <optional>
#include <vector>

#include "fairslice/rational.hpp"

namespace fairslice {

// Minimization problem over exact rationals:
//   minimize objective . x
//   subject to coeffs . x (<= | ==) rhs, and optional per-variable bounds.
// Variables are free unless bounded.
struct LinearProgram {
    enum class Rel { LE, EQ };
    struct Constraint {
        std::vector<Rat> coeffs;
        Rel rel = Rel::LE;
        Rat rhs;
    };

    std::vector<Rat> objective;
    std::vector<Constraint> constraints;
    std::vector<std::optional<Rat>> lower;  // may be shorter than objective
    std::vector<std::optional<Rat>> upper;

    int vars() const { return static_cast<int>(objective.size()); }
    void bound(int var, std::optional<Rat> lo, std::optional<Rat> hi);
};

enum class LPStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPResult {
    LPStatus status = LPStatus::INFEASIBLE;
    std::vector<Rat> solution;  // empty unless OPTIMAL
    Rat objective;
};

// Two-phase simplex with Bland's pivot rule; exact and deterministic.
// The optimum, when one exists, is attained at a vertex of the feasible
// region.  Throws std::invalid_argument on dimension mismatches.
LPResult solve_lp(const LinearProgram& lp);

}  // namespace fairslice
