#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "heis/numeric.hpp"
#include "heis/radic.hpp"
#include "heis/residue.hpp"

namespace heis {

/**
 * Point of the product space prod_{l=1..L} Z/r^lZ: one residue per level,
 * the level-l entry carrying modulus r^l.  No coherence between levels is
 * assumed; is_coherent() tests for it.
 *
 * Ring operations act levelwise, so the image of the integers is a subring
 * and embed() is a ring homomorphism by construction.
 */
class ProductElement {
public:
    ProductElement(Int radix, std::vector<Residue> levels)
        : radix_(std::move(radix)), levels_(std::move(levels)) {
        detail::check_radix(radix_);
        if (levels_.empty()) {
            throw LevelError("ProductElement needs at least one level");
        }
        Int modulus = radix_;
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (levels_[i].modulus() != modulus) {
                throw IncompatibleOperandsError(
                    "level " + std::to_string(i + 1) + " has modulus " +
                    format_int(levels_[i].modulus()) + ", expected " +
                    format_int(modulus));
            }
            modulus *= radix_;
        }
    }

    // The canonical map a -> (a mod r, a mod r^2, ..., a mod r^L).
    static ProductElement embed(const Int& a, const Int& r, int depth) {
        detail::check_radix(r);
        if (depth < 1) {
            throw LevelError("embedding depth must be >= 1");
        }
        std::vector<Residue> levels;
        levels.reserve(static_cast<std::size_t>(depth));
        Int modulus = r;
        for (int l = 1; l <= depth; ++l) {
            levels.emplace_back(a, modulus);
            modulus *= r;
        }
        return ProductElement(r, std::move(levels));
    }

    const Int& radix() const { return radix_; }
    int depth() const { return static_cast<int>(levels_.size()); }

    // 1-based level access.
    const Residue& level(int l) const {
        if (l < 1 || l > depth()) {
            throw LevelError("level " + std::to_string(l) +
                             " outside depth range 1.." +
                             std::to_string(depth()));
        }
        return levels_[static_cast<std::size_t>(l - 1)];
    }

    const std::vector<Residue>& levels() const { return levels_; }

    friend ProductElement operator+(const ProductElement& a,
                                    const ProductElement& b) {
        return zip(a, b, [](const Residue& u, const Residue& v) { return u + v; });
    }

    friend ProductElement operator-(const ProductElement& a,
                                    const ProductElement& b) {
        return zip(a, b, [](const Residue& u, const Residue& v) { return u - v; });
    }

    friend ProductElement operator*(const ProductElement& a,
                                    const ProductElement& b) {
        return zip(a, b, [](const Residue& u, const Residue& v) { return u * v; });
    }

    ProductElement operator-() const {
        std::vector<Residue> out;
        out.reserve(levels_.size());
        for (const Residue& res : levels_) {
            out.push_back(-res);
        }
        return ProductElement(radix_, std::move(out));
    }

    friend bool operator==(const ProductElement& a, const ProductElement& b) {
        return a.radix_ == b.radix_ && a.levels_ == b.levels_;
    }

    friend bool operator!=(const ProductElement& a, const ProductElement& b) {
        return !(a == b);
    }

private:
    template <typename Op>
    static ProductElement zip(const ProductElement& a, const ProductElement& b,
                              Op op) {
        check_same_space(a, b);
        std::vector<Residue> out;
        out.reserve(a.levels_.size());
        for (std::size_t i = 0; i < a.levels_.size(); ++i) {
            out.push_back(op(a.levels_[i], b.levels_[i]));
        }
        return ProductElement(a.radix_, std::move(out));
    }

    static void check_same_space(const ProductElement& a,
                                 const ProductElement& b) {
        if (a.radix_ != b.radix_ || a.levels_.size() != b.levels_.size()) {
            throw IncompatibleOperandsError(
                "product elements live in different spaces (radix " +
                format_int(a.radix_) + " depth " +
                std::to_string(a.levels_.size()) + " vs radix " +
                format_int(b.radix_) + " depth " +
                std::to_string(b.levels_.size()) + ")");
        }
    }

    Int radix_;
    std::vector<Residue> levels_;
};

// Ultrametric on the product space: r^{-(l-1)} where l is the first level at
// which x and y differ, and 0 when they agree through the full depth.
inline Rat ultrametric_distance(const ProductElement& x,
                                const ProductElement& y) {
    if (x.radix() != y.radix() || x.depth() != y.depth()) {
        throw IncompatibleOperandsError(
            "ultrametric_distance needs elements of the same product space");
    }
    for (int l = 1; l <= x.depth(); ++l) {
        if (x.level(l) != y.level(l)) {
            return make_rat(
                1, pow_int(x.radix(), static_cast<unsigned long>(l - 1)));
        }
    }
    return Rat(0);
}

// Whether successive levels are compatible: x_{l+1} reduces to x_l mod r^l.
inline bool is_coherent(const ProductElement& x) {
    for (int l = 1; l < x.depth(); ++l) {
        const Int& coarse = x.level(l).value();
        const Int& fine = x.level(l + 1).value();
        if (mod_floor(fine, x.level(l).modulus()) != coarse) {
            return false;
        }
    }
    return true;
}

// Expansion of a truncated r-adic integer into its residue tower.  The result
// is coherent by construction.
inline ProductElement to_product(const RAdicInt& a) {
    std::vector<Residue> levels;
    levels.reserve(static_cast<std::size_t>(a.depth()));
    for (int l = 1; l <= a.depth(); ++l) {
        levels.push_back(a.level(l));
    }
    return ProductElement(a.radix(), std::move(levels));
}

// Inverse of to_product on coherent elements.
inline RAdicInt to_radic(const ProductElement& x) {
    if (!is_coherent(x)) {
        throw NotCoherentError(
            "product element is not coherent; no r-adic integer matches it");
    }
    return RAdicInt(x.radix(), x.depth(), x.level(x.depth()).value());
}

/**
 * Limit of an integer sequence that is Cauchy in the r-adic metric, read off
 * at precision depth L.  The sequence must have settled: its maximal suffix
 * that is constant modulo r^L must contain at least two entries (a single
 * final value is not yet evidence of convergence).  Otherwise NotCauchyError.
 */
inline RAdicInt radic_from_cauchy(const std::vector<Int>& seq, const Int& r,
                                  int depth) {
    detail::check_radix(r);
    if (depth < 1) {
        throw LevelError("precision depth must be >= 1");
    }
    if (seq.size() < 2) {
        throw NotCauchyError(
            "sequence too short to witness convergence at the requested "
            "precision");
    }
    const Int modulus = pow_int(r, static_cast<unsigned long>(depth));
    const Int tail = mod_floor(seq.back(), modulus);
    std::size_t stable = 1;
    for (std::size_t i = seq.size() - 1; i-- > 0;) {
        if (mod_floor(seq[i], modulus) != tail) {
            break;
        }
        ++stable;
    }
    if (stable < 2) {
        throw NotCauchyError(
            "sequence has not stabilized modulo r^" + std::to_string(depth) +
            "; last step still moves at that precision");
    }
    return RAdicInt(r, depth, tail);
}

} // namespace heis
