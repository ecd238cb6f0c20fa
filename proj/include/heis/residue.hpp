#pragma once

#include <ostream>
#include <string>

#include "heis/numeric.hpp"

namespace heis {

/**
 * Element of Z/mZ for an integer modulus m >= 2, stored as the canonical
 * representative in [0, m).
 *
 * Arithmetic requires both operands to carry the same modulus; mixing moduli
 * throws IncompatibleOperandsError rather than silently coercing.
 */
class Residue {
public:
    Residue(Int value, Int modulus) : modulus_(std::move(modulus)) {
        if (modulus_ < 2) {
            throw InvalidRadixError("Residue modulus must be >= 2, got " +
                                    format_int(modulus_));
        }
        value_ = mod_floor(value, modulus_);
    }

    const Int& value() const { return value_; }
    const Int& modulus() const { return modulus_; }

    friend Residue operator+(const Residue& a, const Residue& b) {
        check_compatible(a, b);
        return Residue(a.value_ + b.value_, a.modulus_);
    }

    friend Residue operator-(const Residue& a, const Residue& b) {
        check_compatible(a, b);
        return Residue(a.value_ - b.value_, a.modulus_);
    }

    friend Residue operator*(const Residue& a, const Residue& b) {
        check_compatible(a, b);
        return Residue(a.value_ * b.value_, a.modulus_);
    }

    Residue operator-() const { return Residue(-value_, modulus_); }

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.modulus_ == b.modulus_ && a.value_ == b.value_;
    }

    friend bool operator!=(const Residue& a, const Residue& b) {
        return !(a == b);
    }

    friend std::ostream& operator<<(std::ostream& os, const Residue& a) {
        return os << a.value_.get_str() << " (mod " << a.modulus_.get_str()
                  << ")";
    }

private:
    static void check_compatible(const Residue& a, const Residue& b) {
        if (a.modulus_ != b.modulus_) {
            throw IncompatibleOperandsError(
                "residue moduli differ: " + format_int(a.modulus_) + " vs " +
                format_int(b.modulus_));
        }
    }

    Int value_;
    Int modulus_;
};

} // namespace heis
