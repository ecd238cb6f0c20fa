#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "heis/numeric.hpp"
#include "heis/residue.hpp"

namespace heis {

namespace detail {

inline void check_radix(const Int& r) {
    if (r < 2) {
        throw InvalidRadixError("radix must be >= 2, got " + format_int(r));
    }
}

} // namespace detail

// Multiplicity of r in a (the largest l with r^l | a). Undefined for a = 0;
// callers handle zero separately.
inline unsigned long radic_valuation(const Int& a, const Int& r) {
    detail::check_radix(r);
    Int reduced;
    return mpz_remove(reduced.get_mpz_t(), a.get_mpz_t(), r.get_mpz_t());
}

// r-adic absolute value |a|_r = r^{-l} with l the multiplicity of r in a,
// and |0|_r = 0.
inline Rat radic_abs(const Int& a, const Int& r) {
    detail::check_radix(r);
    if (a == 0) {
        return Rat(0);
    }
    return make_rat(1, pow_int(r, radic_valuation(a, r)));
}

// The induced ultrametric d_r(a, b) = |a - b|_r.
inline Rat radic_dist(const Int& a, const Int& b, const Int& r) {
    return radic_abs(a - b, r);
}

/**
 * Truncation of an r-adic integer at precision depth L: the coherent residue
 * tower (a mod r, a mod r^2, ..., a mod r^L), stored compactly as the single
 * top digit a mod r^L.  Every level is recoverable via level().
 *
 * Arithmetic is exact at the coarser of the two precisions; mixing radices
 * throws IncompatibleOperandsError.
 */
class RAdicInt {
public:
    RAdicInt(Int radix, int depth, const Int& value)
        : radix_(std::move(radix)), depth_(depth) {
        detail::check_radix(radix_);
        if (depth_ < 1) {
            throw LevelError("RAdicInt depth must be >= 1, got " +
                             std::to_string(depth_));
        }
        modulus_ = pow_int(radix_, static_cast<unsigned long>(depth_));
        digit_ = mod_floor(value, modulus_);
    }

    static RAdicInt embed(const Int& a, const Int& r, int depth) {
        return RAdicInt(r, depth, a);
    }

    const Int& radix() const { return radix_; }
    int depth() const { return depth_; }
    const Int& digit() const { return digit_; }
    const Int& modulus() const { return modulus_; }

    // Residue at level l (1-based, l <= depth).
    Residue level(int l) const {
        if (l < 1 || l > depth_) {
            throw LevelError("level " + std::to_string(l) +
                             " outside depth range 1.." +
                             std::to_string(depth_));
        }
        return Residue(digit_, pow_int(radix_, static_cast<unsigned long>(l)));
    }

    friend RAdicInt operator+(const RAdicInt& a, const RAdicInt& b) {
        const int depth = common_depth(a, b);
        return RAdicInt(a.radix_, depth, a.digit_ + b.digit_);
    }

    friend RAdicInt operator-(const RAdicInt& a, const RAdicInt& b) {
        const int depth = common_depth(a, b);
        return RAdicInt(a.radix_, depth, a.digit_ - b.digit_);
    }

    friend RAdicInt operator*(const RAdicInt& a, const RAdicInt& b) {
        const int depth = common_depth(a, b);
        return RAdicInt(a.radix_, depth, a.digit_ * b.digit_);
    }

    RAdicInt operator-() const { return RAdicInt(radix_, depth_, -digit_); }

    friend bool operator==(const RAdicInt& a, const RAdicInt& b) {
        return a.radix_ == b.radix_ && a.depth_ == b.depth_ &&
               a.digit_ == b.digit_;
    }

    friend bool operator!=(const RAdicInt& a, const RAdicInt& b) {
        return !(a == b);
    }

    friend std::ostream& operator<<(std::ostream& os, const RAdicInt& a) {
        return os << a.digit_.get_str() << " (mod " << a.radix_.get_str()
                  << "^" << a.depth_ << ")";
    }

private:
    // Results live at the coarser precision; radices must agree exactly.
    static int common_depth(const RAdicInt& a, const RAdicInt& b) {
        if (a.radix_ != b.radix_) {
            throw IncompatibleOperandsError(
                "r-adic radices differ: " + format_int(a.radix_) + " vs " +
                format_int(b.radix_));
        }
        return a.depth_ < b.depth_ ? a.depth_ : b.depth_;
    }

    Int radix_;
    int depth_;
    Int digit_;
    Int modulus_;
};

} // namespace heis
