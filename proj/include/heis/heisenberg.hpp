#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "heis/numeric.hpp"
#include "heis/radic.hpp"
#include "heis/residue.hpp"

namespace heis {

/**
 * Adapter that lets the group law run over interchangeable coefficient
 * rings.  A ring scalar must supply +, *, unary -, ==, and a ring_traits
 * specialization producing zeros/integers with matching ring parameters.
 */
template <typename A>
struct ring_traits;

template <>
struct ring_traits<Int> {
    static Int zero_like(const Int&) { return Int(0); }
    static Int from_int(long v, const Int&) { return Int(v); }
    static bool compatible(const Int&, const Int&) { return true; }
    static std::string describe(const Int&) { return "integer"; }
};

template <>
struct ring_traits<Rat> {
    static Rat zero_like(const Rat&) { return Rat(0); }
    static Rat from_int(long v, const Rat&) { return Rat(v); }
    static bool compatible(const Rat&, const Rat&) { return true; }
    static std::string describe(const Rat&) { return "rational"; }
};

template <>
struct ring_traits<double> {
    static double zero_like(double) { return 0.0; }
    static double from_int(long v, double) { return static_cast<double>(v); }
    static bool compatible(double, double) { return true; }
    static std::string describe(double) { return "real"; }
};

template <>
struct ring_traits<Residue> {
    static Residue zero_like(const Residue& a) {
        return Residue(0, a.modulus());
    }
    static Residue from_int(long v, const Residue& a) {
        return Residue(v, a.modulus());
    }
    static bool compatible(const Residue& a, const Residue& b) {
        return a.modulus() == b.modulus();
    }
    static std::string describe(const Residue& a) {
        return "residue mod " + format_int(a.modulus());
    }
};

template <>
struct ring_traits<RAdicInt> {
    static RAdicInt zero_like(const RAdicInt& a) {
        return RAdicInt(a.radix(), a.depth(), 0);
    }
    static RAdicInt from_int(long v, const RAdicInt& a) {
        return RAdicInt(a.radix(), a.depth(), Int(v));
    }
    static bool compatible(const RAdicInt& a, const RAdicInt& b) {
        return a.radix() == b.radix() && a.depth() == b.depth();
    }
    static std::string describe(const RAdicInt& a) {
        return format_int(a.radix()) + "-adic at depth " +
               std::to_string(a.depth());
    }
};

template <typename A>
concept RingScalar = requires(const A& a, const A& b) {
    { a + b } -> std::convertible_to<A>;
    { a * b } -> std::convertible_to<A>;
    { -a } -> std::convertible_to<A>;
    { a == b } -> std::convertible_to<bool>;
    { ring_traits<A>::zero_like(a) } -> std::convertible_to<A>;
    { ring_traits<A>::from_int(0L, a) } -> std::convertible_to<A>;
    { ring_traits<A>::compatible(a, b) } -> std::convertible_to<bool>;
};

/**
 * Point of the Heisenberg group H_n(A) = A^n x A^n x A.
 *
 * Group law (the only implementation in the library; everything else is
 * built from it):
 *
 *     (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + x . y')
 *
 * identity (0, 0, 0), inverse (-x, -y, -t + x . y).  The asymmetric cross
 * term x . y' is what makes the group nonabelian for n >= 1.
 *
 * Invariants: n >= 1, |x| = |y| = n, and all 2n + 1 coordinates carry the
 * same ring parameters (same modulus, same radix/depth, ...).
 */
template <RingScalar A>
class HeisenbergPoint {
public:
    HeisenbergPoint(std::vector<A> x, std::vector<A> y, A t)
        : x_(std::move(x)), y_(std::move(y)), t_(std::move(t)) {
        if (x_.empty() || x_.size() != y_.size()) {
            throw IncompatibleOperandsError(
                "point needs x and y of equal dimension >= 1 (got " +
                std::to_string(x_.size()) + " and " +
                std::to_string(y_.size()) + ")");
        }
        for (const A& c : x_) {
            check_scalar(c);
        }
        for (const A& c : y_) {
            check_scalar(c);
        }
    }

    int dim() const { return static_cast<int>(x_.size()); }

    const std::vector<A>& x() const { return x_; }
    const std::vector<A>& y() const { return y_; }
    const A& t() const { return t_; }

    const A& x(int i) const { return x_[static_cast<std::size_t>(i)]; }
    const A& y(int i) const { return y_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const HeisenbergPoint& a, const HeisenbergPoint& b) {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.t_ == b.t_;
    }

    friend bool operator!=(const HeisenbergPoint& a, const HeisenbergPoint& b) {
        return !(a == b);
    }

private:
    void check_scalar(const A& c) const {
        if (!ring_traits<A>::compatible(c, t_)) {
            throw IncompatibleOperandsError(
                "point coordinates carry mismatched ring parameters (" +
                ring_traits<A>::describe(c) + " vs " +
                ring_traits<A>::describe(t_) + ")");
        }
    }

    std::vector<A> x_;
    std::vector<A> y_;
    A t_;
};

template <RingScalar A>
A dot(const std::vector<A>& a, const std::vector<A>& b) {
    A acc = ring_traits<A>::zero_like(a[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc = acc + a[i] * b[i];
    }
    return acc;
}

template <RingScalar A>
HeisenbergPoint<A> identity_like(const HeisenbergPoint<A>& g) {
    std::vector<A> zx, zy;
    zx.reserve(g.x().size());
    zy.reserve(g.y().size());
    for (const A& c : g.x()) {
        zx.push_back(ring_traits<A>::zero_like(c));
    }
    for (const A& c : g.y()) {
        zy.push_back(ring_traits<A>::zero_like(c));
    }
    return HeisenbergPoint<A>(std::move(zx), std::move(zy),
                              ring_traits<A>::zero_like(g.t()));
}

namespace detail {

template <RingScalar A>
void check_same_group(const HeisenbergPoint<A>& g, const HeisenbergPoint<A>& h) {
    if (g.dim() != h.dim()) {
        throw IncompatibleOperandsError(
            "points have different dimensions: " + std::to_string(g.dim()) +
            " vs " + std::to_string(h.dim()));
    }
    if (!ring_traits<A>::compatible(g.t(), h.t())) {
        throw IncompatibleOperandsError(
            "points live over different rings (" +
            ring_traits<A>::describe(g.t()) + " vs " +
            ring_traits<A>::describe(h.t()) + ")");
    }
}

} // namespace detail

template <RingScalar A>
HeisenbergPoint<A> compose(const HeisenbergPoint<A>& g,
                           const HeisenbergPoint<A>& h) {
    detail::check_same_group(g, h);
    std::vector<A> x, y;
    x.reserve(g.x().size());
    y.reserve(g.y().size());
    for (int i = 0; i < g.dim(); ++i) {
        x.push_back(g.x(i) + h.x(i));
        y.push_back(g.y(i) + h.y(i));
    }
    return HeisenbergPoint<A>(std::move(x), std::move(y),
                              g.t() + h.t() + dot(g.x(), h.y()));
}

template <RingScalar A>
HeisenbergPoint<A> inverse(const HeisenbergPoint<A>& g) {
    std::vector<A> x, y;
    x.reserve(g.x().size());
    y.reserve(g.y().size());
    for (int i = 0; i < g.dim(); ++i) {
        x.push_back(-g.x(i));
        y.push_back(-g.y(i));
    }
    return HeisenbergPoint<A>(std::move(x), std::move(y),
                              -g.t() + dot(g.x(), g.y()));
}

// Conjugation of g by h, in the convention h * g * h^{-1}.  Only the central
// coordinate moves: the result is (x_g, y_g, t_g + x_h . y_g - x_g . y_h).
template <RingScalar A>
HeisenbergPoint<A> conjugate(const HeisenbergPoint<A>& g,
                             const HeisenbergPoint<A>& h) {
    return compose(compose(h, g), inverse(h));
}

// g * h * g^{-1} * h^{-1}; always central, with t = x_g . y_h - x_h . y_g.
template <RingScalar A>
HeisenbergPoint<A> commutator(const HeisenbergPoint<A>& g,
                              const HeisenbergPoint<A>& h) {
    return compose(compose(g, h), compose(inverse(g), inverse(h)));
}

template <RingScalar A>
struct Dilation {
    A factor;
};

// The dilation (x, y, t) -> (r x, r y, r^2 t); a group automorphism for any
// ring element r, and the squared factor on t is forced by the cross term.
template <RingScalar A>
HeisenbergPoint<A> dilate(const HeisenbergPoint<A>& g, const Dilation<A>& d) {
    std::vector<A> x, y;
    x.reserve(g.x().size());
    y.reserve(g.y().size());
    for (int i = 0; i < g.dim(); ++i) {
        x.push_back(d.factor * g.x(i));
        y.push_back(d.factor * g.y(i));
    }
    return HeisenbergPoint<A>(std::move(x), std::move(y),
                              d.factor * d.factor * g.t());
}

template <RingScalar A>
HeisenbergPoint<A> dilate(const HeisenbergPoint<A>& g, const A& factor) {
    return dilate(g, Dilation<A>{factor});
}

template <RingScalar A>
HeisenbergPoint<A> dilate(const HeisenbergPoint<A>& g, long factor) {
    return dilate(g, Dilation<A>{ring_traits<A>::from_int(factor, g.t())});
}

// The quotient map onto A^n x A^n that forgets t; a homomorphism onto the
// abelianization.
template <RingScalar A>
std::pair<std::vector<A>, std::vector<A>> project_xy(
    const HeisenbergPoint<A>& g) {
    return {g.x(), g.y()};
}

// Membership in the center {(0, 0, t)}.  Over a ring with 1 this coincides
// with commuting against every element (probing with unit vectors forces
// x = y = 0), which the tests check directly.
template <RingScalar A>
bool is_central(const HeisenbergPoint<A>& g) {
    for (int i = 0; i < g.dim(); ++i) {
        if (!(g.x(i) == ring_traits<A>::zero_like(g.x(i))) ||
            !(g.y(i) == ring_traits<A>::zero_like(g.y(i)))) {
            return false;
        }
    }
    return true;
}

template <RingScalar A, typename F>
auto map_point(const HeisenbergPoint<A>& g, F f)
    -> HeisenbergPoint<decltype(f(g.t()))> {
    using B = decltype(f(g.t()));
    std::vector<B> x, y;
    x.reserve(g.x().size());
    y.reserve(g.y().size());
    for (int i = 0; i < g.dim(); ++i) {
        x.push_back(f(g.x(i)));
        y.push_back(f(g.y(i)));
    }
    return HeisenbergPoint<B>(std::move(x), std::move(y), f(g.t()));
}

// Coordinatewise reduction H_n(Z) -> H_n(Z/mZ); a homomorphism because the
// group law is polynomial in the coordinates.
inline HeisenbergPoint<Residue> reduce_mod(const HeisenbergPoint<Int>& g,
                                           const Int& modulus) {
    return map_point(g, [&](const Int& c) { return Residue(c, modulus); });
}

// Membership in H_n(kZ): every coordinate a multiple of k.
inline bool in_lattice(const HeisenbergPoint<Int>& g, const Int& k) {
    for (int i = 0; i < g.dim(); ++i) {
        if (!divides(k, g.x(i)) || !divides(k, g.y(i))) {
            return false;
        }
    }
    return divides(k, g.t());
}

// Membership in the dilated lattice delta_r(H_n(Z)) = r Z^n x r Z^n x r^2 Z.
inline bool in_dilated_lattice(const HeisenbergPoint<Int>& g, const Int& r) {
    for (int i = 0; i < g.dim(); ++i) {
        if (!divides(r, g.x(i)) || !divides(r, g.y(i))) {
            return false;
        }
    }
    return divides(r * r, g.t());
}

// Rational-point variants with independent x/y and t moduli; these are the
// stabilizer lattices of the canonical boxes used by the solenoid code.
inline bool in_anisotropic_lattice(const HeisenbergPoint<Rat>& g,
                                   const Int& xy_modulus,
                                   const Int& t_modulus) {
    for (int i = 0; i < g.dim(); ++i) {
        if (!in_scaled_lattice(g.x(i), xy_modulus) ||
            !in_scaled_lattice(g.y(i), xy_modulus)) {
            return false;
        }
    }
    return in_scaled_lattice(g.t(), t_modulus);
}

inline bool in_lattice(const HeisenbergPoint<Rat>& g, const Int& m) {
    return in_anisotropic_lattice(g, m, m);
}

} // namespace heis
