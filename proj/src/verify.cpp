#include "heis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "heis/finite_group.hpp"
#include "heis/heisenberg.hpp"
#include "heis/product.hpp"
#include "heis/profinite.hpp"
#include "heis/radic.hpp"
#include "heis/solenoid.hpp"
#include "heis/subriemannian.hpp"

namespace heis::verify {

namespace {

struct Context {
    std::mt19937_64 rng;
    double tolerance;
};

// A check returns "" on success and a counterexample description on failure.
using CheckFn = std::function<std::string(Context&)>;

struct Property {
    const char* scope;
    const char* name;
    const char* statement;
    CheckFn fn;
};

long rand_long(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Int rand_int(std::mt19937_64& rng, long bound) {
    return Int(rand_long(rng, -bound, bound));
}

template <typename Maker>
HeisenbergPoint<std::invoke_result_t<Maker>> make_point(int n, Maker make) {
    using A = std::invoke_result_t<Maker>;
    std::vector<A> x, y;
    for (int i = 0; i < n; ++i) {
        x.push_back(make());
    }
    for (int i = 0; i < n; ++i) {
        y.push_back(make());
    }
    return HeisenbergPoint<A>(std::move(x), std::move(y), make());
}

HeisenbergPoint<Int> rand_int_point(std::mt19937_64& rng, int n, long bound) {
    return make_point(n, [&] { return rand_int(rng, bound); });
}

HeisenbergPoint<Rat> rand_rat_point(std::mt19937_64& rng, int n, long bound) {
    return make_point(n, [&] {
        return make_rat(rand_int(rng, bound), Int(rand_long(rng, 1, bound)));
    });
}

// Random element of H_n(mZ) (or of the dilated lattice when `dilated`).
HeisenbergPoint<Rat> rand_lattice_point(std::mt19937_64& rng, int n,
                                        const Int& m, bool dilated,
                                        long bound) {
    std::vector<Rat> x, y;
    for (int i = 0; i < n; ++i) {
        x.emplace_back(m * rand_int(rng, bound));
        y.emplace_back(m * rand_int(rng, bound));
    }
    const Int tm = dilated ? Int(m * m) : m;
    return HeisenbergPoint<Rat>(std::move(x), std::move(y),
                                Rat(tm * rand_int(rng, bound)));
}

unsigned long valuation_by_trial_division(Int a, const Int& r) {
    unsigned long v = 0;
    while (a != 0 && divides(r, a)) {
        a /= r;
        ++v;
    }
    return v;
}

template <typename A>
std::string check_group_axioms(std::mt19937_64& rng, int iters,
                               std::function<HeisenbergPoint<A>()> sample) {
    (void)rng;
    for (int i = 0; i < iters; ++i) {
        const auto g = sample();
        const auto h = sample();
        const auto k = sample();
        if (compose(compose(g, h), k) != compose(g, compose(h, k))) {
            return "associativity failed";
        }
        const auto id = identity_like(g);
        if (compose(g, id) != g || compose(id, g) != g) {
            return "identity failed";
        }
        if (compose(g, inverse(g)) != id || compose(inverse(g), g) != id) {
            return "inverse failed";
        }
    }
    return "";
}

// ---- property table ------------------------------------------------------

std::vector<Property> build_properties() {
    std::vector<Property> props;
    const long radices[] = {2, 3, 4, 6, 10};

    // ring_core -------------------------------------------------------------
    props.push_back(
        {"ring_core", "radic-abs-valuation",
         "|a|_r = r^{-l}, l = multiplicity of r in a; |0|_r = 0",
         [radices](Context& ctx) -> std::string {
             for (const long r : radices) {
                 const Int R(r);
                 if (radic_abs(0, R) != Rat(0)) {
                     return "|0|_r != 0";
                 }
                 for (int i = 0; i < 400; ++i) {
                     const Int a = rand_int(ctx.rng, 1000000);
                     if (a == 0) {
                         continue;
                     }
                     const Rat expected =
                         make_rat(1, pow_int(R, valuation_by_trial_division(a, R)));
                     if (radic_abs(a, R) != expected) {
                         std::ostringstream os;
                         os << "a=" << a << " r=" << r;
                         return os.str();
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"ring_core", "ultrametric",
         "d_r(a,c) <= max(d_r(a,b), d_r(b,c))",
         [radices](Context& ctx) -> std::string {
             for (const long r : radices) {
                 const Int R(r);
                 for (int i = 0; i < 400; ++i) {
                     const Int a = rand_int(ctx.rng, 1000000);
                     const Int b = rand_int(ctx.rng, 1000000);
                     const Int c = rand_int(ctx.rng, 1000000);
                     if (radic_dist(a, c, R) >
                         std::max(radic_dist(a, b, R), radic_dist(b, c, R))) {
                         std::ostringstream os;
                         os << "a=" << a << " b=" << b << " c=" << c
                            << " r=" << r;
                         return os.str();
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"ring_core", "submultiplicative",
         "|ab|_r <= |a|_r |b|_r, with equality whenever r is prime",
         [radices](Context& ctx) -> std::string {
             for (const long r : radices) {
                 const Int R(r);
                 const bool prime = (r == 2 || r == 3);
                 for (int i = 0; i < 400; ++i) {
                     const Int a = rand_int(ctx.rng, 100000);
                     const Int b = rand_int(ctx.rng, 100000);
                     if (a == 0 || b == 0) {
                         continue;
                     }
                     const Rat lhs = radic_abs(a * b, R);
                     const Rat rhs = radic_abs(a, R) * radic_abs(b, R);
                     if (lhs > rhs || (prime && lhs != rhs)) {
                         std::ostringstream os;
                         os << "a=" << a << " b=" << b << " r=" << r;
                         return os.str();
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"ring_core", "embedding-isometry",
         "rho(q(a), q(b)) = d_r(a,b) whenever |a-b| < r^L",
         [](Context& ctx) -> std::string {
             for (const long r : {2L, 3L}) {
                 const Int R(r);
                 const int L = 6;
                 const Int box = pow_int(R, L);
                 for (int i = 0; i < 500; ++i) {
                     const Int a = rand_int(ctx.rng, 200);
                     const Int b = a + rand_long(ctx.rng, 0, 1) *
                                           rand_int(ctx.rng, 60);
                     if (abs(a - b) >= box) {
                         continue;
                     }
                     const Rat rho = ultrametric_distance(
                         ProductElement::embed(a, R, L),
                         ProductElement::embed(b, R, L));
                     if (rho != radic_dist(a, b, R)) {
                         std::ostringstream os;
                         os << "a=" << a << " b=" << b << " r=" << r;
                         return os.str();
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"ring_core", "embedding-ring-homomorphism",
         "q(a+b) = q(a) + q(b) and q(ab) = q(a) q(b) levelwise",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 600; ++i) {
                 const Int R(rand_long(ctx.rng, 2, 7));
                 const int L = static_cast<int>(rand_long(ctx.rng, 1, 5));
                 const Int a = rand_int(ctx.rng, 1000000);
                 const Int b = rand_int(ctx.rng, 1000000);
                 const ProductElement qa = ProductElement::embed(a, R, L);
                 const ProductElement qb = ProductElement::embed(b, R, L);
                 if (qa + qb != ProductElement::embed(a + b, R, L) ||
                     qa * qb != ProductElement::embed(a * b, R, L)) {
                     std::ostringstream os;
                     os << "a=" << a << " b=" << b << " r=" << R << " L=" << L;
                     return os.str();
                 }
             }
             return "";
         }});
    props.push_back(
        {"ring_core", "cauchy-limit",
         "a stabilized r-adic Cauchy sequence recovers its limit digit",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 300; ++i) {
                 const Int R(rand_long(ctx.rng, 2, 5));
                 const int L = static_cast<int>(rand_long(ctx.rng, 1, 4));
                 const Int target = rand_int(ctx.rng, 100000);
                 const Int modulus = pow_int(R, L);
                 std::vector<Int> seq;
                 for (int j = 0; j < 4; ++j) { // noisy prefix
                     seq.push_back(rand_int(ctx.rng, 100000));
                 }
                 for (int j = 0; j < 3; ++j) { // settled tail
                     seq.push_back(target + modulus * rand_int(ctx.rng, 50));
                 }
                 const RAdicInt limit = radic_from_cauchy(seq, R, L);
                 if (limit.digit() != mod_floor(target, modulus)) {
                     return "recovered digit mismatch";
                 }
             }
             return "";
         }});

    // heisenberg_core --------------------------------------------------------
    props.push_back(
        {"heisenberg_core", "group-axioms",
         "(x,y,t)(x',y',t') = (x+x', y+y', t+t'+x.y') is associative with "
         "identity (0,0,0) and inverse (-x,-y,-t+x.y) over Z, Q, Z/kZ, Z_r",
         [](Context& ctx) -> std::string {
             auto& rng = ctx.rng;
             for (const int n : {1, 2}) {
                 std::string err = check_group_axioms<Int>(
                     rng, 150, [&] { return rand_int_point(rng, n, 1000000); });
                 if (!err.empty()) {
                     return "integers: " + err;
                 }
                 err = check_group_axioms<Rat>(
                     rng, 150, [&] { return rand_rat_point(rng, n, 60); });
                 if (!err.empty()) {
                     return "rationals: " + err;
                 }
                 const Int k(rand_long(rng, 2, 8));
                 err = check_group_axioms<Residue>(rng, 150, [&] {
                     return make_point(n, [&] {
                         return Residue(rand_int(rng, 100), k);
                     });
                 });
                 if (!err.empty()) {
                     return "residues: " + err;
                 }
                 const Int r(rand_long(rng, 2, 3));
                 const int L = static_cast<int>(rand_long(rng, 1, 4));
                 err = check_group_axioms<RAdicInt>(rng, 150, [&] {
                     return make_point(n, [&] {
                         return RAdicInt(r, L, rand_int(rng, 10000));
                     });
                 });
                 if (!err.empty()) {
                     return "r-adic: " + err;
                 }
             }
             return "";
         }});
    props.push_back(
        {"heisenberg_core", "conjugation-closed-form",
         "h g h^{-1} = (x_g, y_g, t_g + x_h.y_g - x_g.y_h)",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 2000; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 const auto g = rand_int_point(ctx.rng, n, 1000);
                 const auto h = rand_int_point(ctx.rng, n, 1000);
                 const auto c = conjugate(g, h);
                 const Int expected_t =
                     g.t() + dot(h.x(), g.y()) - dot(g.x(), h.y());
                 if (c.x() != g.x() || c.y() != g.y() || c.t() != expected_t) {
                     return "closed form disagrees with composition";
                 }
             }
             return "";
         }});
    props.push_back(
        {"heisenberg_core", "commutator-central",
         "[g,h] = (0, 0, x_g.y_h - x_h.y_g) lies in the center",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 2000; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 const auto g = rand_int_point(ctx.rng, n, 1000);
                 const auto h = rand_int_point(ctx.rng, n, 1000);
                 const auto c = commutator(g, h);
                 const Int expected_t =
                     dot(g.x(), h.y()) - dot(h.x(), g.y());
                 if (!is_central(c) || c.t() != expected_t) {
                     return "commutator not central or wrong value";
                 }
             }
             return "";
         }});
    props.push_back(
        {"heisenberg_core", "dilation-automorphism",
         "delta_r(g h) = delta_r(g) delta_r(h) and delta_r delta_s = delta_{rs}",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 1500; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 const auto g = rand_int_point(ctx.rng, n, 1000);
                 const auto h = rand_int_point(ctx.rng, n, 1000);
                 const Int r = rand_int(ctx.rng, 9);
                 const Int s = rand_int(ctx.rng, 9);
                 if (dilate(compose(g, h), r) !=
                     compose(dilate(g, r), dilate(h, r))) {
                     return "not a homomorphism";
                 }
                 if (dilate(dilate(g, r), s) != dilate(g, Int(r * s))) {
                     return "composition law failed";
                 }
             }
             return "";
         }});
    props.push_back(
        {"heisenberg_core", "lattice-interlacing",
         "H_n(r^2 Z) < delta_r(H_n(Z)) < H_n(r Z), both inclusions strict",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 1500; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 const Int r(rand_long(ctx.rng, 2, 6));
                 const auto g = rand_int_point(ctx.rng, n, 500);
                 // Generic element of H_n(r^2 Z): every coordinate scaled by
                 // r^2 independently (not a dilation image a priori).
                 const auto fine = map_point(g, [&](const Int& c) {
                     return Int(r * r * c);
                 });
                 if (!in_dilated_lattice(fine, r)) {
                     return "H_n(r^2 Z) element outside delta_r image";
                 }
                 if (!in_lattice(dilate(g, r), r)) {
                     return "delta_r image outside H_n(r Z)";
                 }
             }
             // Strictness witnesses: delta_r(1,0,0) has x = r, not in
             // H_n(r^2 Z); the central (0,0,r) is in H_n(rZ) but t = r is not
             // divisible by r^2.
             const Int r(2);
             const HeisenbergPoint<Int> e1({Int(1)}, {Int(0)}, Int(0));
             if (in_lattice(dilate(e1, r), Int(r * r))) {
                 return "first inclusion not strict";
             }
             const HeisenbergPoint<Int> z({Int(0)}, {Int(0)}, r);
             if (!in_lattice(z, r) || in_dilated_lattice(z, r)) {
                 return "second inclusion not strict";
             }
             return "";
         }});
    props.push_back(
        {"heisenberg_core", "base-projection-homomorphism",
         "pi(g h) = pi(g) + pi(h) onto A^n x A^n",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 1500; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 const auto g = rand_int_point(ctx.rng, n, 100000);
                 const auto h = rand_int_point(ctx.rng, n, 100000);
                 const auto pc = project_xy(compose(g, h));
                 for (int j = 0; j < n; ++j) {
                     if (pc.first[static_cast<std::size_t>(j)] !=
                             g.x(j) + h.x(j) ||
                         pc.second[static_cast<std::size_t>(j)] !=
                             g.y(j) + h.y(j)) {
                         return "projection not additive";
                     }
                 }
             }
             return "";
         }});

    // finite_groups -----------------------------------------------------------
    props.push_back(
        {"finite_groups", "order-formula", "|H_n(Z/kZ)| = k^{2n+1}",
         [](Context&) -> std::string {
             for (const int n : {1, 2}) {
                 for (long k = 2; k <= (n == 1 ? 8 : 6); ++k) {
                     const auto G = finite::FiniteHeisenberg::enumerate(n, Int(k));
                     Int expected = pow_int(Int(k), static_cast<unsigned long>(2 * n + 1));
                     if (Int(static_cast<unsigned long>(G.order())) != expected) {
                         return "order mismatch at n=" + std::to_string(n) +
                                " k=" + std::to_string(k);
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "engine-matches-generic-law",
         "index arithmetic equals the generic group law over Z/kZ",
         [](Context& ctx) -> std::string {
             for (const auto& [n, k] : {std::pair<int, long>{1, 5},
                                        std::pair<int, long>{2, 3}}) {
                 const auto G = finite::FiniteHeisenberg::enumerate(n, Int(k));
                 for (int i = 0; i < 1500; ++i) {
                     const auto a = static_cast<std::size_t>(
                         rand_long(ctx.rng, 0, static_cast<long>(G.order()) - 1));
                     const auto b = static_cast<std::size_t>(
                         rand_long(ctx.rng, 0, static_cast<long>(G.order()) - 1));
                     if (G.point(G.compose(a, b)) !=
                         compose(G.point(a), G.point(b))) {
                         return "compose mismatch";
                     }
                     if (G.point(G.inverse(a)) != inverse(G.point(a))) {
                         return "inverse mismatch";
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "center-is-t-axis",
         "center of H_n(Z/kZ) = {(0,0,t)}, size k",
         [](Context&) -> std::string {
             for (const int n : {1, 2}) {
                 for (long k = 2; k <= (n == 1 ? 5 : 3); ++k) {
                     const auto G = finite::FiniteHeisenberg::enumerate(n, Int(k));
                     const auto Z = finite::center_of(G);
                     if (Z.order() != static_cast<std::size_t>(k)) {
                         return "center size != k";
                     }
                     for (const std::size_t m : Z.members()) {
                         if (!is_central(G.point(m))) {
                             return "center member with nonzero base";
                         }
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "commutator-equals-center",
         "commutator subgroup of H_n(Z/kZ) equals its center",
         [](Context&) -> std::string {
             for (const int n : {1, 2}) {
                 for (long k = 2; k <= (n == 1 ? 5 : 3); ++k) {
                     const auto G = finite::FiniteHeisenberg::enumerate(n, Int(k));
                     if (finite::commutator_subgroup(G).members() !=
                         finite::center_of(G).members()) {
                         return "sets differ at n=" + std::to_string(n) +
                                " k=" + std::to_string(k);
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "index-ladder",
         "inside H_n(Z/r^3Z): [G : delta_r-image] = r^{2n+2}, "
         "[G : H_n(rZ)-image] = r^{2n+1}",
         [](Context&) -> std::string {
             for (const long r : {2L, 3L}) {
                 const auto G =
                     finite::FiniteHeisenberg::enumerate(1, Int(r * r * r));
                 if (finite::subgroup_index(G, finite::dilation_image(G, Int(r))) !=
                     pow_int(Int(r), 4)) {
                     return "dilation-image index wrong, r=" + std::to_string(r);
                 }
                 if (finite::subgroup_index(G, finite::lattice_image(G, Int(r))) !=
                     pow_int(Int(r), 3)) {
                     return "lattice-image index wrong, r=" + std::to_string(r);
                 }
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "normality-matrix",
         "H_n(rZ)-image normal; delta_r-image not normal in G but normal in "
         "the H_n(rZ)-image",
         [](Context&) -> std::string {
             const auto G = finite::FiniteHeisenberg::enumerate(1, Int(8));
             const auto lat = finite::lattice_image(G, Int(2));
             const auto dil = finite::dilation_image(G, Int(2));
             if (!finite::is_normal(G, lat)) {
                 return "lattice image not normal";
             }
             if (finite::is_normal(G, dil)) {
                 return "dilated image unexpectedly normal";
             }
             if (!finite::is_normal_in(lat, dil)) {
                 return "dilated image not normal inside lattice image";
             }
             return "";
         }});
    props.push_back(
        {"finite_groups", "center-commutator-quotient",
         "|center image| / |commutator subgroup| = k for H_n(kZ) inside "
         "H_n(Z/k^3Z)",
         [](Context&) -> std::string {
             for (const long k : {2L, 3L}) {
                 if (finite::quotient_center_by_commutator(1, Int(k), 3) !=
                     Int(k)) {
                     return "quotient != k at k=" + std::to_string(k);
                 }
             }
             return "";
         }});

    // profinite ---------------------------------------------------------------
    props.push_back(
        {"profinite", "phi-homomorphism",
         "phi(g h) = phi(g) phi(h) levelwise",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 800; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 1, 4));
                 const auto g = rand_int_point(ctx.rng, n, 100000);
                 const auto h = rand_int_point(ctx.rng, n, 100000);
                 if (profinite::embed(compose(g, h), r, L) !=
                     profinite::compose(profinite::embed(g, r, L),
                                        profinite::embed(h, r, L))) {
                     return "phi not a homomorphism";
                 }
             }
             return "";
         }});
    props.push_back(
        {"profinite", "coherence-detects-tampering",
         "phi output is coherent; bumping one level breaks coherence",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 400; ++i) {
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 2, 4));
                 const auto g = rand_int_point(ctx.rng, 1, 100000);
                 const auto w = profinite::embed(g, r, L);
                 if (!profinite::is_coherent(w)) {
                     return "embedding not coherent";
                 }
                 // Bump the deepest level by 1: the change survives reduction
                 // mod r^{L-1}, so coherence with level L-1 must break.
                 auto levels = w.levels();
                 auto& top = levels.back();
                 const Int m = top.t().modulus();
                 std::vector<Residue> x = top.x(), y = top.y();
                 x[0] = x[0] + Residue(1, m);
                 top = HeisenbergPoint<Residue>(x, y, top.t());
                 if (profinite::is_coherent(profinite::TowerPoint(r, levels))) {
                     return "tampered tower still coherent";
                 }
             }
             return "";
         }});
    props.push_back(
        {"profinite", "adic-identification",
         "tower <-> r-adic coordinate conversion is a group isomorphism",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 800; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 1, 4));
                 const auto g = rand_int_point(ctx.rng, n, 100000);
                 const auto h = rand_int_point(ctx.rng, n, 100000);
                 const auto wg = profinite::embed(g, r, L);
                 const auto wh = profinite::embed(h, r, L);
                 if (profinite::from_adic(profinite::to_adic(wg)) != wg) {
                     return "round trip failed";
                 }
                 if (profinite::to_adic(profinite::compose(wg, wh)) !=
                     compose(profinite::to_adic(wg), profinite::to_adic(wh))) {
                     return "conversion does not commute with compose";
                 }
             }
             return "";
         }});
    props.push_back(
        {"profinite", "coherent-count",
         "depth-L coherent towers number r^{L(2n+1)} (n=1, r=2, L=2: 64)",
         [](Context&) -> std::string {
             // Enumerate the full tower space H_1(Z/2) x H_1(Z/4) = 512
             // elements and count the coherent ones.
             const auto G1 = finite::FiniteHeisenberg::enumerate(1, Int(2));
             const auto G2 = finite::FiniteHeisenberg::enumerate(1, Int(4));
             std::size_t coherent = 0;
             for (std::size_t a = 0; a < G1.order(); ++a) {
                 for (std::size_t b = 0; b < G2.order(); ++b) {
                     const profinite::TowerPoint w(
                         Int(2), {G1.point(a), G2.point(b)});
                     if (profinite::is_coherent(w)) {
                         ++coherent;
                     }
                 }
             }
             if (coherent != 64) {
                 return "count = " + std::to_string(coherent);
             }
             return "";
         }});
    props.push_back(
        {"profinite", "integer-lift",
         "every coherent tower is phi of its level-L integer lift",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 600; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 1, 4));
                 const auto w =
                     profinite::embed(rand_int_point(ctx.rng, n, 1000000), r, L);
                 if (profinite::embed(profinite::integer_lift(w), r, L) != w) {
                     return "lift does not re-embed to the tower";
                 }
             }
             return "";
         }});

    // solenoid ------------------------------------------------------------------
    props.push_back(
        {"solenoid", "canonical-well-defined",
         "canonical_reduce(g lambda) = canonical_reduce(g) for lattice lambda",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 800; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 3));
                 const Int m = pow_int(r, static_cast<unsigned long>(L));
                 const auto g = rand_rat_point(ctx.rng, n, 40);
                 const auto lam =
                     rand_lattice_point(ctx.rng, n, m, false, 20);
                 if (solenoid::canonical_reduce(compose(g, lam), r, L) !=
                     solenoid::canonical_reduce(g, r, L)) {
                     return "reduction depends on the representative";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "coset-test-cross-check",
         "same_coset(g,h) iff canonical forms agree; lattice shifts stay in "
         "the coset and generic shifts leave it",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 800; ++i) {
                 const int n = 1;
                 const Int r(2);
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 3));
                 const auto g = rand_rat_point(ctx.rng, n, 30);
                 const auto h = rand_rat_point(ctx.rng, n, 30);
                 const bool via_membership = solenoid::same_coset(g, h, r, L);
                 const bool via_canonical =
                     solenoid::canonical_reduce(g, r, L) ==
                     solenoid::canonical_reduce(h, r, L);
                 if (via_membership != via_canonical) {
                     return "the two coset tests disagree";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "tower-coherence",
         "project_level(project_level(p, l'), l) = project_level(p, l)",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 600; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = 4;
                 const auto p = solenoid::canonical_reduce(
                     rand_rat_point(ctx.rng, n, 50), r, L);
                 const int l2 = static_cast<int>(rand_long(ctx.rng, 0, L));
                 const int l1 = static_cast<int>(rand_long(ctx.rng, 0, l2));
                 if (solenoid::project_level(solenoid::project_level(p, l2),
                                             l1) !=
                     solenoid::project_level(p, l1)) {
                     return "tower projections incompatible";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "left-action",
         "left_action is a group action, intertwines the embedding, and "
         "commutes with project_level",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 500; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 3));
                 const auto h1 = rand_rat_point(ctx.rng, n, 30);
                 const auto h2 = rand_rat_point(ctx.rng, n, 30);
                 const auto g = rand_rat_point(ctx.rng, n, 30);
                 const auto p = solenoid::canonical_reduce(g, r, L);
                 if (solenoid::left_action(compose(h1, h2), p) !=
                     solenoid::left_action(h1, solenoid::left_action(h2, p))) {
                     return "action law failed";
                 }
                 if (solenoid::embed(compose(h1, g), r, L) !=
                     solenoid::left_action(h1, solenoid::embed(g, r, L))) {
                     return "embedding does not intertwine the action";
                 }
                 const int l = static_cast<int>(rand_long(ctx.rng, 0, L));
                 if (solenoid::project_level(solenoid::left_action(h1, p), l) !=
                     solenoid::left_action(h1, solenoid::project_level(p, l))) {
                     return "action does not commute with projection";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "base-projection",
         "base_projection is fiber-constant and additive under the action",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 500; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(2);
                 const int L = 3;
                 const auto p = solenoid::canonical_reduce(
                     rand_rat_point(ctx.rng, n, 30), r, L);
                 const int l = static_cast<int>(rand_long(ctx.rng, 0, L));
                 // Central elements act only on the fiber.
                 auto central = identity_like(p.rep());
                 central = HeisenbergPoint<Rat>(
                     central.x(), central.y(),
                     make_rat(rand_int(ctx.rng, 50), Int(7)));
                 if (solenoid::base_projection(
                         solenoid::left_action(central, p), l) !=
                     solenoid::base_projection(p, l)) {
                     return "base point moved under a central action";
                 }
                 const auto h = rand_rat_point(ctx.rng, n, 30);
                 const auto moved =
                     solenoid::base_projection(solenoid::left_action(h, p), l);
                 const auto base = solenoid::base_projection(p, l);
                 const Int m = pow_int(r, static_cast<unsigned long>(l));
                 for (int j = 0; j < n; ++j) {
                     if (moved.first[static_cast<std::size_t>(j)] !=
                             rat_mod(h.x(j) +
                                         base.first[static_cast<std::size_t>(j)],
                                     m) ||
                         moved.second[static_cast<std::size_t>(j)] !=
                             rat_mod(h.y(j) +
                                         base.second[static_cast<std::size_t>(j)],
                                     m)) {
                         return "base point not additive";
                     }
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "shift-map",
         "shift is representative-independent and has r^{2n+2} depth-0 "
         "preimages",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 400; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 2));
                 const auto g = rand_rat_point(ctx.rng, n, 30);
                 if (solenoid::shift_map(solenoid::canonical_reduce(g, r, L)) !=
                     solenoid::canonical_reduce(dilate(g, Rat(r)), r, L)) {
                     return "shift not well-defined";
                 }
             }
             for (const long r : {2L, 3L}) {
                 const auto target = solenoid::canonical_reduce(
                     rand_rat_point(ctx.rng, 1, 20), Int(r), 0);
                 const auto pre = solenoid::shift_preimages(target);
                 if (pre.size() != static_cast<std::size_t>(r * r * r * r)) {
                     return "preimage count != r^4 at r=" + std::to_string(r);
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "circle-pi0",
         "pi0 is additive with kernel the integer representatives",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 600; ++i) {
                 const Int r(rand_long(ctx.rng, 2, 4));
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 3));
                 const Rat a = make_rat(rand_int(ctx.rng, 200),
                                        Int(rand_long(ctx.rng, 1, 20)));
                 const Rat b = make_rat(rand_int(ctx.rng, 200),
                                        Int(rand_long(ctx.rng, 1, 20)));
                 const auto pa = solenoid::circle_embed(a, r, L);
                 const auto pb = solenoid::circle_embed(b, r, L);
                 if (solenoid::pi0(pa + pb) !=
                     rat_mod(solenoid::pi0(pa) + solenoid::pi0(pb), 1)) {
                     return "pi0 not additive";
                 }
                 if ((solenoid::pi0(pa) == Rat(0)) != is_integer(pa.rep())) {
                     return "kernel mismatch";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "dilated-identification",
         "dilated <-> standard towers intertwine embeddings, actions, and "
         "round-trip through depth truncation",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 400; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const Int r(rand_long(ctx.rng, 2, 3));
                 const int L = static_cast<int>(rand_long(ctx.rng, 0, 2));
                 const auto g = rand_rat_point(ctx.rng, n, 30);
                 const auto h = rand_rat_point(ctx.rng, n, 30);
                 const auto dil = solenoid::embed_dilated(g, r, L);
                 if (solenoid::dilated_to_standard(dil) !=
                     solenoid::embed(g, r, L)) {
                     return "embeddings disagree at common depth";
                 }
                 if (solenoid::standard_to_dilated(
                         solenoid::embed(g, r, 2 * L)) != dil) {
                     return "depth-2L refinement disagrees";
                 }
                 if (solenoid::dilated_to_standard(
                         solenoid::left_action(h, dil)) !=
                     solenoid::left_action(h,
                                           solenoid::dilated_to_standard(dil))) {
                     return "actions do not intertwine";
                 }
             }
             return "";
         }});
    props.push_back(
        {"solenoid", "abelian-shadow",
         "for integer x, y parts, g h and h g agree mod 1 in t after "
         "depth-0 reduction",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 600; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 auto mk = [&] {
                     std::vector<Rat> x, y;
                     for (int j = 0; j < n; ++j) {
                         x.emplace_back(rand_int(ctx.rng, 50));
                         y.emplace_back(rand_int(ctx.rng, 50));
                     }
                     return HeisenbergPoint<Rat>(
                         std::move(x), std::move(y),
                         make_rat(rand_int(ctx.rng, 100),
                                  Int(rand_long(ctx.rng, 1, 12))));
                 };
                 const auto g = mk();
                 const auto h = mk();
                 const Int r(2);
                 if (solenoid::canonical_reduce(compose(g, h), r, 0).rep().t() !=
                     solenoid::canonical_reduce(compose(h, g), r, 0).rep().t()) {
                     return "commutator visible mod 1";
                 }
             }
             return "";
         }});

    // subriemannian ---------------------------------------------------------
    props.push_back(
        {"subriemannian", "quasinorm-homogeneity",
         "N(delta_s p) = |s| N(p)",
         [](Context& ctx) -> std::string {
             std::uniform_real_distribution<double> coord(-5.0, 5.0);
             for (int i = 0; i < 2000; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 3));
                 std::vector<double> x, y;
                 for (int j = 0; j < n; ++j) {
                     x.push_back(coord(ctx.rng));
                     y.push_back(coord(ctx.rng));
                 }
                 const subriemannian::RealPoint p(x, y, coord(ctx.rng));
                 const double s = coord(ctx.rng);
                 const double lhs = subriemannian::box_quasinorm(dilate(p, s));
                 const double rhs =
                     std::fabs(s) * subriemannian::box_quasinorm(p);
                 if (std::fabs(lhs - rhs) >
                     1e-9 * std::max(1.0, std::fabs(rhs))) {
                     return "homogeneity violated";
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "endpoint-exact-integration",
         "path_endpoint equals the exact composition of step increments",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 200; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const std::size_t m =
                     static_cast<std::size_t>(rand_long(ctx.rng, 1, 12));
                 // Rational controls with small denominators so that the
                 // oracle is exact.
                 std::vector<Rat> exact;
                 std::vector<double> controls;
                 for (std::size_t s = 0; s < 2 * static_cast<std::size_t>(n) * m;
                      ++s) {
                     const Rat c = make_rat(rand_int(ctx.rng, 8),
                                            Int(rand_long(ctx.rng, 1, 4)));
                     exact.push_back(c);
                     controls.push_back(c.get_d());
                 }
                 // Exact endpoint: left-multiply the increments
                 // (h u, h v, h^2/2 u.v) in order.
                 const Rat h = make_rat(1, Int(static_cast<long>(m)));
                 std::vector<Rat> zx(static_cast<std::size_t>(n), Rat(0));
                 HeisenbergPoint<Rat> acc(zx, zx, Rat(0));
                 for (std::size_t s = 0; s < m; ++s) {
                     std::vector<Rat> u, v;
                     for (int j = 0; j < n; ++j) {
                         u.push_back(
                             exact[2 * static_cast<std::size_t>(n) * s +
                                   static_cast<std::size_t>(j)]);
                     }
                     for (int j = 0; j < n; ++j) {
                         v.push_back(
                             exact[2 * static_cast<std::size_t>(n) * s +
                                   static_cast<std::size_t>(n + j)]);
                     }
                     Rat uv(0);
                     std::vector<Rat> hu, hv;
                     for (int j = 0; j < n; ++j) {
                         uv += u[static_cast<std::size_t>(j)] *
                               v[static_cast<std::size_t>(j)];
                         hu.push_back(h * u[static_cast<std::size_t>(j)]);
                         hv.push_back(h * v[static_cast<std::size_t>(j)]);
                     }
                     const HeisenbergPoint<Rat> inc(hu, hv,
                                                    h * h * uv / 2);
                     acc = compose(inc, acc);
                 }
                 // Double-precision endpoint via the path integrator.
                 std::vector<double> zd(static_cast<std::size_t>(n), 0.0);
                 const subriemannian::HorizontalPath path{
                     subriemannian::RealPoint(zd, zd, 0.0), m, controls};
                 const auto end = subriemannian::path_endpoint(path);
                 for (int j = 0; j < n; ++j) {
                     if (std::fabs(end.x(j) - acc.x(j).get_d()) > 1e-9 ||
                         std::fabs(end.y(j) - acc.y(j).get_d()) > 1e-9) {
                         return "x/y endpoint mismatch";
                     }
                 }
                 if (std::fabs(end.t() - acc.t().get_d()) > 1e-9) {
                     return "t endpoint mismatch";
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "right-invariant-distribution",
         "dR_h maps the horizontal space at g onto the horizontal space at "
         "g h (exact, rational)",
         [](Context& ctx) -> std::string {
             for (int i = 0; i < 400; ++i) {
                 const int n = static_cast<int>(rand_long(ctx.rng, 1, 2));
                 const auto g = rand_rat_point(ctx.rng, n, 20);
                 const auto h = rand_rat_point(ctx.rng, n, 20);
                 // Horizontal direction (u, v, u.y_g) at g.
                 std::vector<Rat> u, v;
                 for (int j = 0; j < n; ++j) {
                     u.emplace_back(rand_int(ctx.rng, 10));
                     v.emplace_back(rand_int(ctx.rng, 10));
                 }
                 const Rat w = dot(u, std::vector<Rat>(g.y()));
                 // Right translation is affine, so the directional
                 // derivative is the exact difference (g + d) h - g h.
                 std::vector<Rat> xExt, yExt;
                 for (int j = 0; j < n; ++j) {
                     xExt.push_back(g.x(j) + u[static_cast<std::size_t>(j)]);
                     yExt.push_back(g.y(j) + v[static_cast<std::size_t>(j)]);
                 }
                 const HeisenbergPoint<Rat> shifted(xExt, yExt, g.t() + w);
                 const auto img1 = compose(shifted, h);
                 const auto img0 = compose(g, h);
                 // The difference must be horizontal at g h: (u, v, u.y_{gh}).
                 const Rat dt = img1.t() - img0.t();
                 const Rat expected = dot(u, std::vector<Rat>(img0.y()));
                 if (dt != expected) {
                     return "pushforward left the distribution";
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "axis-distances",
         "d(0, (x,0,0)) = |x| and d(0, (0,y,0)) = |y| within tolerance",
         [](Context& ctx) -> std::string {
             const double d1 = subriemannian::cc_distance_estimate(
                 subriemannian::RealPoint({1.0}, {0.0}, 0.0), 32, 6,
                 static_cast<std::uint64_t>(ctx.rng()));
             const double d2 = subriemannian::cc_distance_estimate(
                 subriemannian::RealPoint({0.0}, {2.0}, 0.0), 32, 6,
                 static_cast<std::uint64_t>(ctx.rng()));
             std::ostringstream os;
             os << "d(x-axis)=" << d1 << " d(y-axis)=" << d2;
             if (std::fabs(d1 - 1.0) > std::max(0.01, ctx.tolerance) ||
                 std::fabs(d2 - 2.0) > 2.0 * std::max(0.01, ctx.tolerance)) {
                 return os.str();
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "isoperimetric-distance",
         "d(0, (0,0,1)) = 2 sqrt(pi) within tolerance",
         [](Context& ctx) -> std::string {
             const double est = subriemannian::cc_distance_estimate(
                 subriemannian::RealPoint({0.0}, {0.0}, 1.0), 48, 8,
                 static_cast<std::uint64_t>(ctx.rng()));
             const double target = 2.0 * std::sqrt(4.0 * std::atan(1.0));
             std::ostringstream os;
             os << "estimate=" << est << " target=" << target;
             if (std::fabs(est / target - 1.0) > std::max(0.03, ctx.tolerance)) {
                 return os.str();
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "planar-lower-bound",
         "cc estimate >= |(x, y)| (projection length is a lower bound)",
         [](Context& ctx) -> std::string {
             std::uniform_real_distribution<double> coord(-1.5, 1.5);
             for (int i = 0; i < 5; ++i) {
                 const subriemannian::RealPoint p({coord(ctx.rng)},
                                                  {coord(ctx.rng)},
                                                  coord(ctx.rng));
                 const double est = subriemannian::cc_distance_estimate(
                     p, 32, 6, static_cast<std::uint64_t>(ctx.rng()));
                 const double planar = std::hypot(p.x(0), p.y(0));
                 if (est < planar - 1e-3) {
                     std::ostringstream os;
                     os << "estimate " << est << " below planar bound "
                        << planar;
                     return os.str();
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "dilation-scaling",
         "estimate(delta_s p) = |s| estimate(p) within tolerance",
         [](Context& ctx) -> std::string {
             std::uniform_real_distribution<double> coord(-1.0, 1.0);
             for (int i = 0; i < 3; ++i) {
                 const subriemannian::RealPoint p({coord(ctx.rng)},
                                                  {coord(ctx.rng)},
                                                  coord(ctx.rng));
                 const auto [a, b] = subriemannian::dilation_scaling_check(
                     p, 2.0, 32, 6, static_cast<std::uint64_t>(ctx.rng()));
                 if (std::fabs(a - b) >
                     std::max(0.03, ctx.tolerance) * std::max(a, b)) {
                     std::ostringstream os;
                     os << "estimates " << a << " vs " << b;
                     return os.str();
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "ball-volume-exponent",
         "log_2 vol-ratio of quasinorm balls = 2n+2 (MC, loose bound)",
         [](Context& ctx) -> std::string {
             for (const int n : {1, 2}) {
                 const double e = subriemannian::ball_volume_scaling(
                     n, 1.0, 100000, static_cast<std::uint64_t>(ctx.rng()));
                 if (std::fabs(e - (2 * n + 2)) > 0.25) {
                     std::ostringstream os;
                     os << "n=" << n << " exponent=" << e;
                     return os.str();
                 }
             }
             return "";
         }});
    props.push_back(
        {"subriemannian", "translation-jacobians",
         "max |det J - 1| < 1e-6 for left and right translations",
         [](Context& ctx) -> std::string {
             std::uniform_real_distribution<double> coord(-2.0, 2.0);
             for (const int n : {1, 2}) {
                 std::vector<double> x, y;
                 for (int j = 0; j < n; ++j) {
                     x.push_back(coord(ctx.rng));
                     y.push_back(coord(ctx.rng));
                 }
                 const subriemannian::RealPoint h(x, y, coord(ctx.rng));
                 const double left = subriemannian::translation_jacobian_check(
                     h, subriemannian::Side::kLeft, 20,
                     static_cast<std::uint64_t>(ctx.rng()));
                 const double right = subriemannian::translation_jacobian_check(
                     h, subriemannian::Side::kRight, 20,
                     static_cast<std::uint64_t>(ctx.rng()));
                 if (left > 1e-6 || right > 1e-6) {
                     std::ostringstream os;
                     os << "n=" << n << " left=" << left << " right=" << right;
                     return os.str();
                 }
             }
             return "";
         }});

    return props;
}

} // namespace

const std::vector<std::string>& scopes() {
    static const std::vector<std::string> kScopes = {
        "ring_core",  "heisenberg_core", "finite_groups",
        "profinite",  "solenoid",        "subriemannian"};
    return kScopes;
}

SuiteResult run_scope(const std::string& scope, std::uint64_t seed,
                      double tolerance) {
    if (scope != "all" &&
        std::find(scopes().begin(), scopes().end(), scope) == scopes().end()) {
        throw Error("unknown verify scope '" + scope + "'");
    }
    SuiteResult out;
    const std::vector<Property> props = build_properties();
    std::uint64_t salt = 0;
    for (const Property& prop : props) {
        ++salt;
        if (scope != "all" && scope != prop.scope) {
            continue;
        }
        Context ctx{std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + salt),
                    tolerance};
        PropertyResult result;
        result.scope = prop.scope;
        result.name = prop.name;
        result.statement = prop.statement;
        try {
            const std::string err = prop.fn(ctx);
            result.pass = err.empty();
            result.detail = err.empty() ? "ok" : err;
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        out.properties.push_back(std::move(result));
    }
    return out;
}

} // namespace heis::verify
