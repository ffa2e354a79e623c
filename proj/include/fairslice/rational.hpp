#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairslice {

/// Exact arbitrary-precision rational. Always in lowest terms, denominator
/// positive (both maintained by GMP's canonicalization).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p/q" or "p" (decimal integers, optional sign on p).
inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

/// Renders as "p/q", or just "p" for integers.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

/// Advisory decimal rendering (never used in computations).
inline double rat_double(const Rat& q) { return q.get_d(); }

/// base^exp for integer base >= 1.
inline Rat rat_pow(unsigned long base, unsigned long exp) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), base, exp);
    return Rat(z);
}

/// Largest integer <= q.
inline mpz_class rat_floor(const Rat& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

/// Smallest integer >= q.
inline mpz_class rat_ceil(const Rat& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
}

}  // namespace fairslice
