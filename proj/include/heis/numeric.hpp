#pragma once

#include <gmpxx.h>

#include <string>

#include "heis/errors.hpp"

namespace heis {

// Exact scalars. Int is an arbitrary-precision integer, Rat an
// arbitrary-precision rational kept in canonical (lowest-terms) form.
using Int = mpz_class;
using Rat = mpq_class;

inline Int pow_int(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

// Floor division and the matching remainder in [0, |b|).
inline Int floor_div(const Int& a, const Int& b) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int out;
    mpz_fdiv_r(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) {
        throw Error("rational with zero denominator");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) {
    return q.get_den() == 1;
}

inline Int rat_floor(const Rat& q) {
    return floor_div(q.get_num(), q.get_den());
}

// q reduced into [0, m) modulo the integer lattice m*Z.
inline Rat rat_mod(const Rat& q, const Int& m) {
    if (m <= 0) {
        throw Error("rat_mod: modulus must be positive");
    }
    Rat out = q - Rat(m) * Rat(rat_floor(q / Rat(m)));
    out.canonicalize();
    return out;
}

// True when q lies in m*Z.
inline bool in_scaled_lattice(const Rat& q, const Int& m) {
    if (!is_integer(q)) {
        return false;
    }
    return divides(m, q.get_num());
}

inline Int parse_int(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw Error("not a valid integer literal: '" + text + "'");
    }
}

// Accepts "p/q" or a bare integer "p".
inline Rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(text));
    }
    const Int num = parse_int(text.substr(0, slash));
    const Int den = parse_int(text.substr(slash + 1));
    return make_rat(num, den);
}

inline std::string format_int(const Int& a) {
    return a.get_str();
}

// Lowest terms, always with an explicit denominator ("7/3", "5/1").
inline std::string format_rat(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace heis
