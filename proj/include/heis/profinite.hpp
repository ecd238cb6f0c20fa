#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "heis/heisenberg.hpp"
#include "heis/product.hpp"

namespace heis::profinite {

/**
 * Point of the finite tower prod_{l=1..L} H_n(Z/r^lZ), one group element per
 * level.  Levels need not be coherent — that is a checkable property, not a
 * type constraint — so incoherent towers can be represented and rejected.
 */
class TowerPoint {
public:
    TowerPoint(Int radix, std::vector<HeisenbergPoint<Residue>> levels)
        : radix_(std::move(radix)), levels_(std::move(levels)) {
        heis::detail::check_radix(radix_);
        if (levels_.empty()) {
            throw LevelError("tower needs at least one level");
        }
        Int modulus = radix_;
        const int n = levels_.front().dim();
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (levels_[i].dim() != n) {
                throw IncompatibleOperandsError(
                    "tower levels have mismatched dimensions");
            }
            if (levels_[i].t().modulus() != modulus) {
                throw IncompatibleOperandsError(
                    "tower level " + std::to_string(i + 1) +
                    " has modulus " + format_int(levels_[i].t().modulus()) +
                    ", expected " + format_int(modulus));
            }
            modulus *= radix_;
        }
    }

    const Int& radix() const { return radix_; }
    int depth() const { return static_cast<int>(levels_.size()); }
    int dim() const { return levels_.front().dim(); }

    // 1-based level access.
    const HeisenbergPoint<Residue>& level(int l) const {
        if (l < 1 || l > depth()) {
            throw LevelError("level " + std::to_string(l) +
                             " outside depth range 1.." +
                             std::to_string(depth()));
        }
        return levels_[static_cast<std::size_t>(l - 1)];
    }

    const std::vector<HeisenbergPoint<Residue>>& levels() const {
        return levels_;
    }

    friend bool operator==(const TowerPoint& a, const TowerPoint& b) {
        return a.radix_ == b.radix_ && a.levels_ == b.levels_;
    }

    friend bool operator!=(const TowerPoint& a, const TowerPoint& b) {
        return !(a == b);
    }

private:
    Int radix_;
    std::vector<HeisenbergPoint<Residue>> levels_;
};

// A group element with r-adic integer coordinates at a common precision; the
// coherent counterpart of a TowerPoint.
using AdicPoint = HeisenbergPoint<RAdicInt>;

// The levelwise reduction H_n(Z) -> prod_l H_n(Z/r^lZ); a homomorphism at
// every level, injective on the box |coords| < r^L / 2.
inline TowerPoint embed(const HeisenbergPoint<Int>& g, const Int& r,
                        int depth) {
    heis::detail::check_radix(r);
    if (depth < 1) {
        throw LevelError("embedding depth must be >= 1");
    }
    std::vector<HeisenbergPoint<Residue>> levels;
    levels.reserve(static_cast<std::size_t>(depth));
    Int modulus = r;
    for (int l = 1; l <= depth; ++l) {
        levels.push_back(reduce_mod(g, modulus));
        modulus *= r;
    }
    return TowerPoint(r, std::move(levels));
}

namespace detail {

inline void check_same_tower(const TowerPoint& a, const TowerPoint& b) {
    if (a.radix() != b.radix() || a.depth() != b.depth() ||
        a.dim() != b.dim()) {
        throw IncompatibleOperandsError(
            "tower points live in different towers");
    }
}

} // namespace detail

// Levelwise group operations; the generic law runs over Residue scalars.
inline TowerPoint compose(const TowerPoint& a, const TowerPoint& b) {
    detail::check_same_tower(a, b);
    std::vector<HeisenbergPoint<Residue>> levels;
    levels.reserve(static_cast<std::size_t>(a.depth()));
    for (int l = 1; l <= a.depth(); ++l) {
        levels.push_back(heis::compose(a.level(l), b.level(l)));
    }
    return TowerPoint(a.radix(), std::move(levels));
}

inline TowerPoint inverse(const TowerPoint& a) {
    std::vector<HeisenbergPoint<Residue>> levels;
    levels.reserve(static_cast<std::size_t>(a.depth()));
    for (int l = 1; l <= a.depth(); ++l) {
        levels.push_back(heis::inverse(a.level(l)));
    }
    return TowerPoint(a.radix(), std::move(levels));
}

// Whether level l is the mod-r^l reduction of level l+1 for every l < depth.
inline bool is_coherent(const TowerPoint& w) {
    for (int l = 1; l < w.depth(); ++l) {
        const Int& modulus = w.level(l).t().modulus();
        const HeisenbergPoint<Residue>& fine = w.level(l + 1);
        const HeisenbergPoint<Residue> reduced =
            map_point(fine, [&](const Residue& c) {
                return Residue(c.value(), modulus);
            });
        if (reduced != w.level(l)) {
            return false;
        }
    }
    return true;
}

// Identification of coherent towers with r-adic coordinate points: the
// deepest level determines every level, so the map just repackages the
// level-L coordinates as RAdicInt digits.
inline AdicPoint to_adic(const TowerPoint& w) {
    if (!is_coherent(w)) {
        throw NotCoherentError(
            "tower is not coherent; no r-adic point corresponds to it");
    }
    const HeisenbergPoint<Residue>& top = w.level(w.depth());
    return map_point(top, [&](const Residue& c) {
        return RAdicInt(w.radix(), w.depth(), c.value());
    });
}

inline TowerPoint from_adic(const AdicPoint& p) {
    const Int& r = p.t().radix();
    const int depth = p.t().depth();
    std::vector<HeisenbergPoint<Residue>> levels;
    levels.reserve(static_cast<std::size_t>(depth));
    for (int l = 1; l <= depth; ++l) {
        levels.push_back(
            map_point(p, [&](const RAdicInt& c) { return c.level(l); }));
    }
    return TowerPoint(r, std::move(levels));
}

// An integer point whose embedding agrees with w at every stored level: the
// level-L lift with coordinates in [0, r^L).  Witnesses that the image of
// H_n(Z) exhausts the coherent elements at any finite depth.
inline HeisenbergPoint<Int> integer_lift(const TowerPoint& w) {
    if (!is_coherent(w)) {
        throw NotCoherentError("tower is not coherent; no integer point lifts it");
    }
    const HeisenbergPoint<Residue>& top = w.level(w.depth());
    return map_point(top, [](const Residue& c) { return c.value(); });
}

} // namespace heis::profinite
