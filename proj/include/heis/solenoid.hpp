#pragma once

#include <utility>
#include <vector>

#include "heis/heisenberg.hpp"
#include "heis/numeric.hpp"

namespace heis::solenoid {

/**
 * Truncated circle solenoid: a point of prod_{l=0..L} R/r^lZ, where the
 * levels are coherent and hence determined by the deepest one.  Stored as
 * the unique representative in [0, r^L); the level-l value is rep mod r^l.
 * Level 0 (modulus r^0 = 1) always exists, so depth 0 is allowed.
 */
class CirclePoint {
public:
    CirclePoint(Int radix, int depth, Rat rep);

    const Int& radix() const { return radix_; }
    int depth() const { return depth_; }
    const Rat& rep() const { return rep_; }
    const Int& modulus() const { return modulus_; }

    // Same-solenoid addition, mod r^L.
    friend CirclePoint operator+(const CirclePoint& a, const CirclePoint& b);

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
        return a.radix_ == b.radix_ && a.depth_ == b.depth_ &&
               a.rep_ == b.rep_;
    }
    friend bool operator!=(const CirclePoint& a, const CirclePoint& b) {
        return !(a == b);
    }

private:
    Int radix_;
    int depth_;
    Int modulus_;
    Rat rep_;
};

/**
 * Truncated Heisenberg solenoid: a coherent sequence of left cosets
 * g * H_n(r^lZ) for l = 0..L, stored via its deepest component as the unique
 * representative with x_i, y_i, t all in [0, r^L).  Canonicalization is the
 * two-step rule of canonical_reduce(); the rule (x, y before t) is part of
 * the wire format because the lattice is nonabelian.
 */
class Point {
public:
    Point(Int radix, int depth, HeisenbergPoint<Rat> rep);

    const Int& radix() const { return radix_; }
    int depth() const { return depth_; }
    int dim() const { return rep_.dim(); }
    const HeisenbergPoint<Rat>& rep() const { return rep_; }
    const Int& modulus() const { return modulus_; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.radix_ == b.radix_ && a.depth_ == b.depth_ &&
               a.rep_ == b.rep_;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    Int radix_;
    int depth_;
    Int modulus_;
    HeisenbergPoint<Rat> rep_;
};

/**
 * Solenoid over the dilated lattice chain: cosets of
 * delta_{r^l}(H_n(Z)) = {(r^l a, r^l b, r^{2l} c)}, canonical box
 * x_i, y_i in [0, r^L), t in [0, r^{2L}).
 */
class DilatedPoint {
public:
    DilatedPoint(Int radix, int depth, HeisenbergPoint<Rat> rep);

    const Int& radix() const { return radix_; }
    int depth() const { return depth_; }
    int dim() const { return rep_.dim(); }
    const HeisenbergPoint<Rat>& rep() const { return rep_; }
    const Int& xy_modulus() const { return xy_modulus_; }
    const Int& t_modulus() const { return t_modulus_; }

    friend bool operator==(const DilatedPoint& a, const DilatedPoint& b) {
        return a.radix_ == b.radix_ && a.depth_ == b.depth_ &&
               a.rep_ == b.rep_;
    }
    friend bool operator!=(const DilatedPoint& a, const DilatedPoint& b) {
        return !(a == b);
    }

private:
    Int radix_;
    int depth_;
    Int xy_modulus_;
    Int t_modulus_;
    HeisenbergPoint<Rat> rep_;
};

// The unique in-box representative of the left coset g * H_n(r^L Z).
// Right-multiplying by (r^L a, r^L b, r^L c) first reduces x and y
// coordinatewise mod r^L (choosing a, b) — which shifts t by x . (y' - y) —
// and then reduces t mod r^L (choosing c).
Point canonical_reduce(const HeisenbergPoint<Rat>& g, const Int& r, int depth);

// Same two-step rule against the dilated lattice: x, y mod r^L, then t mod
// r^{2L}.
DilatedPoint canonical_reduce_dilated(const HeisenbergPoint<Rat>& g,
                                      const Int& r, int depth);

// Left-coset test by lattice membership of inverse(g) * h; agrees with
// equality of canonical forms (the cross-check lives in the tests).
bool same_coset(const HeisenbergPoint<Rat>& g, const HeisenbergPoint<Rat>& h,
                const Int& r, int depth);

// Coarsening H_n(R)/H_n(r^L Z) -> H_n(R)/H_n(r^l Z) for 0 <= l <= L.
Point project_level(const Point& p, int level);

// The embedding of the group into the solenoid (identical to
// canonical_reduce; named separately because it is the map whose
// intertwining properties the tests exercise).
Point embed(const HeisenbergPoint<Rat>& g, const Int& r, int depth);

// The dilated-lattice embedding at depth L.
DilatedPoint embed_dilated(const HeisenbergPoint<Rat>& g, const Int& r,
                           int depth);

// Left multiplication on cosets: h * (g H) = (h g) H.
Point left_action(const HeisenbergPoint<Rat>& h, const Point& p);
DilatedPoint left_action(const HeisenbergPoint<Rat>& h, const DilatedPoint& p);

// The circle-bundle base point at level l: (x mod r^l, y mod r^l).
// Constant on fibers since the center only moves t.
std::pair<std::vector<Rat>, std::vector<Rat>> base_projection(const Point& p,
                                                              int level);

// The self-map induced by delta_r at fixed depth: dilate the representative
// and re-canonicalize.  Well-defined because delta_r(H_n(r^L Z)) is
// contained in H_n(r^L Z).
Point shift_map(const Point& p);

// All depth-0 solutions of shift_map(g) = p; there are exactly r^{2n+2} of
// them.  Requires p at depth 0 (the H_n(R)/H_n(Z) resolution).
std::vector<Point> shift_preimages(const Point& p);

// The circle-solenoid embedding a -> a mod r^L and the evaluation of the
// level-0 component.
CirclePoint circle_embed(const Rat& a, const Int& r, int depth);
Rat pi0(const CirclePoint& p);

// The interlacing H_n(r^{2l}Z) <= delta_{r^l}(H_n(Z)) <= H_n(r^lZ) as maps:
// a depth-L dilated point coarsens to a depth-L standard point, and a
// depth-2L standard point refines to a depth-L dilated point.
Point dilated_to_standard(const DilatedPoint& u);
DilatedPoint standard_to_dilated(const Point& p);

} // namespace heis::solenoid
