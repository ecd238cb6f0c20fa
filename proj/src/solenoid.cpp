#include "heis/solenoid.hpp"

#include <string>

namespace heis::solenoid {

namespace {

void check_depth(int depth) {
    if (depth < 0) {
        throw LevelError("solenoid depth must be >= 0, got " +
                         std::to_string(depth));
    }
}

void check_in_range(const Rat& c, const Int& modulus, const char* what) {
    if (c < 0 || c >= Rat(modulus)) {
        throw LevelError(std::string(what) +
                         " coordinate outside the canonical box [0, " +
                         format_int(modulus) + ")");
    }
}

// Shared two-step reduction against the lattice {(mxy a, mxy b, mt c)}.
HeisenbergPoint<Rat> reduce_rep(const HeisenbergPoint<Rat>& g, const Int& mxy,
                                const Int& mt) {
    std::vector<Rat> x, y;
    x.reserve(static_cast<std::size_t>(g.dim()));
    y.reserve(static_cast<std::size_t>(g.dim()));
    // Step 1: bring x and y into [0, mxy).  The right multiplication that
    // does this shifts t by x . (y' - y), with x the *original* x part.
    Rat t = g.t();
    for (int i = 0; i < g.dim(); ++i) {
        x.push_back(rat_mod(g.x(i), mxy));
        Rat yi = rat_mod(g.y(i), mxy);
        t += g.x(i) * (yi - g.y(i));
        y.push_back(std::move(yi));
    }
    // Step 2: bring t into [0, mt) with a central lattice shift.
    t = rat_mod(t, mt);
    return HeisenbergPoint<Rat>(std::move(x), std::move(y), std::move(t));
}

} // namespace

CirclePoint::CirclePoint(Int radix, int depth, Rat rep)
    : radix_(std::move(radix)), depth_(depth), rep_(std::move(rep)) {
    heis::detail::check_radix(radix_);
    check_depth(depth_);
    modulus_ = pow_int(radix_, static_cast<unsigned long>(depth_));
    check_in_range(rep_, modulus_, "circle");
}

CirclePoint operator+(const CirclePoint& a, const CirclePoint& b) {
    if (a.radix_ != b.radix_ || a.depth_ != b.depth_) {
        throw IncompatibleOperandsError(
            "circle points live on different solenoids");
    }
    return CirclePoint(a.radix_, a.depth_, rat_mod(a.rep_ + b.rep_, a.modulus_));
}

Point::Point(Int radix, int depth, HeisenbergPoint<Rat> rep)
    : radix_(std::move(radix)), depth_(depth), rep_(std::move(rep)) {
    heis::detail::check_radix(radix_);
    check_depth(depth_);
    modulus_ = pow_int(radix_, static_cast<unsigned long>(depth_));
    for (int i = 0; i < rep_.dim(); ++i) {
        check_in_range(rep_.x(i), modulus_, "x");
        check_in_range(rep_.y(i), modulus_, "y");
    }
    check_in_range(rep_.t(), modulus_, "t");
}

DilatedPoint::DilatedPoint(Int radix, int depth, HeisenbergPoint<Rat> rep)
    : radix_(std::move(radix)), depth_(depth), rep_(std::move(rep)) {
    heis::detail::check_radix(radix_);
    check_depth(depth_);
    xy_modulus_ = pow_int(radix_, static_cast<unsigned long>(depth_));
    t_modulus_ = xy_modulus_ * xy_modulus_;
    for (int i = 0; i < rep_.dim(); ++i) {
        check_in_range(rep_.x(i), xy_modulus_, "x");
        check_in_range(rep_.y(i), xy_modulus_, "y");
    }
    check_in_range(rep_.t(), t_modulus_, "t");
}

Point canonical_reduce(const HeisenbergPoint<Rat>& g, const Int& r, int depth) {
    heis::detail::check_radix(r);
    check_depth(depth);
    const Int m = pow_int(r, static_cast<unsigned long>(depth));
    return Point(r, depth, reduce_rep(g, m, m));
}

DilatedPoint canonical_reduce_dilated(const HeisenbergPoint<Rat>& g,
                                      const Int& r, int depth) {
    heis::detail::check_radix(r);
    check_depth(depth);
    const Int m = pow_int(r, static_cast<unsigned long>(depth));
    return DilatedPoint(r, depth, reduce_rep(g, m, m * m));
}

bool same_coset(const HeisenbergPoint<Rat>& g, const HeisenbergPoint<Rat>& h,
                const Int& r, int depth) {
    heis::detail::check_radix(r);
    check_depth(depth);
    const Int m = pow_int(r, static_cast<unsigned long>(depth));
    return in_lattice(compose(inverse(g), h), m);
}

Point project_level(const Point& p, int level) {
    if (level < 0 || level > p.depth()) {
        throw LevelError("projection level " + std::to_string(level) +
                         " outside 0.." + std::to_string(p.depth()));
    }
    return canonical_reduce(p.rep(), p.radix(), level);
}

Point embed(const HeisenbergPoint<Rat>& g, const Int& r, int depth) {
    return canonical_reduce(g, r, depth);
}

DilatedPoint embed_dilated(const HeisenbergPoint<Rat>& g, const Int& r,
                           int depth) {
    return canonical_reduce_dilated(g, r, depth);
}

Point left_action(const HeisenbergPoint<Rat>& h, const Point& p) {
    return canonical_reduce(compose(h, p.rep()), p.radix(), p.depth());
}

DilatedPoint left_action(const HeisenbergPoint<Rat>& h, const DilatedPoint& p) {
    return canonical_reduce_dilated(compose(h, p.rep()), p.radix(), p.depth());
}

std::pair<std::vector<Rat>, std::vector<Rat>> base_projection(const Point& p,
                                                              int level) {
    if (level < 0 || level > p.depth()) {
        throw LevelError("base level " + std::to_string(level) +
                         " outside 0.." + std::to_string(p.depth()));
    }
    const Int m = pow_int(p.radix(), static_cast<unsigned long>(level));
    std::vector<Rat> bx, by;
    bx.reserve(static_cast<std::size_t>(p.dim()));
    by.reserve(static_cast<std::size_t>(p.dim()));
    for (int i = 0; i < p.dim(); ++i) {
        bx.push_back(rat_mod(p.rep().x(i), m));
        by.push_back(rat_mod(p.rep().y(i), m));
    }
    return {std::move(bx), std::move(by)};
}

Point shift_map(const Point& p) {
    const Rat factor(p.radix());
    return canonical_reduce(dilate(p.rep(), factor), p.radix(), p.depth());
}

std::vector<Point> shift_preimages(const Point& p) {
    if (p.depth() != 0) {
        throw LevelError(
            "preimages are enumerated at depth-0 resolution; project first");
    }
    const Int& r = p.radix();
    const long rl = r.get_si();
    const int n = p.dim();
    const Rat rr(r);
    // A preimage g in the box [0,1)^{2n+1} must satisfy r g_x = p_x (mod 1),
    // r g_y = p_y (mod 1), and r^2 g_t = p_t + (p_x + j) . m  (mod 1) where
    // j, m are the integer carries of the x, y parts.  Enumerate the
    // r^{2n+2} carry choices and keep every candidate that verifiably maps
    // onto p under shift_map.
    std::vector<Point> out;
    std::vector<long> js(static_cast<std::size_t>(n), 0);
    std::vector<long> ms(static_cast<std::size_t>(n), 0);
    const long combos = [&] {
        long c = 1;
        for (int i = 0; i < 2 * n; ++i) {
            c *= rl;
        }
        return c;
    }();
    for (long combo = 0; combo < combos; ++combo) {
        long rest = combo;
        for (int i = 0; i < n; ++i) {
            js[static_cast<std::size_t>(i)] = rest % rl;
            rest /= rl;
        }
        for (int i = 0; i < n; ++i) {
            ms[static_cast<std::size_t>(i)] = rest % rl;
            rest /= rl;
        }
        std::vector<Rat> gx, gy;
        gx.reserve(static_cast<std::size_t>(n));
        gy.reserve(static_cast<std::size_t>(n));
        Rat cross(0);
        for (int i = 0; i < n; ++i) {
            const Rat xi = (p.rep().x(i) + Rat(js[static_cast<std::size_t>(i)])) / rr;
            const Rat yi = (p.rep().y(i) + Rat(ms[static_cast<std::size_t>(i)])) / rr;
            cross += (p.rep().x(i) + Rat(js[static_cast<std::size_t>(i)])) *
                     Rat(ms[static_cast<std::size_t>(i)]);
            gx.push_back(xi);
            gy.push_back(yi);
        }
        const Rat s = rat_mod(p.rep().t() + cross, 1);
        for (long c = 0; c < rl * rl; ++c) {
            const Rat gt = (s + Rat(c)) / (rr * rr);
            HeisenbergPoint<Rat> candidate(gx, gy, gt);
            Point q(p.radix(), 0, reduce_rep(candidate, 1, 1));
            if (shift_map(q) == p) {
                out.push_back(std::move(q));
            }
        }
    }
    return out;
}

CirclePoint circle_embed(const Rat& a, const Int& r, int depth) {
    heis::detail::check_radix(r);
    check_depth(depth);
    return CirclePoint(r, depth,
                       rat_mod(a, pow_int(r, static_cast<unsigned long>(depth))));
}

Rat pi0(const CirclePoint& p) {
    return rat_mod(p.rep(), 1);
}

Point dilated_to_standard(const DilatedPoint& u) {
    return canonical_reduce(u.rep(), u.radix(), u.depth());
}

DilatedPoint standard_to_dilated(const Point& p) {
    if (p.depth() % 2 != 0) {
        throw LevelError(
            "refinement needs an even standard depth 2L; got depth " +
            std::to_string(p.depth()));
    }
    return canonical_reduce_dilated(p.rep(), p.radix(), p.depth() / 2);
}

} // namespace heis::solenoid
