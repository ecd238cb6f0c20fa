// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// pass.  Every tolerance and time cap is pinned here, next to the check that
// uses it.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "heis/finite_group.hpp"
#include "heis/heisenberg.hpp"
#include "heis/product.hpp"
#include "heis/profinite.hpp"
#include "heis/radic.hpp"
#include "heis/solenoid.hpp"
#include "heis/subriemannian.hpp"
#include "test_support.hpp"

using heis::HeisenbergPoint;
using heis::Int;
using heis::Rat;
using heis::Residue;
using namespace test_support;

namespace {

struct Criterion {
    int id;
    std::string label;
    double time_cap_seconds; // 0 = uncapped
    std::function<void(std::string&)> run; // throws or appends to fail reasons
};

void expect(bool ok, const std::string& what, std::string& failures) {
    if (!ok) {
        if (!failures.empty()) {
            failures += "; ";
        }
        failures += what;
    }
}

template <typename A>
bool axioms_hold(const HeisenbergPoint<A>& g, const HeisenbergPoint<A>& h,
                 const HeisenbergPoint<A>& k) {
    const auto e = heis::identity_like(g);
    return heis::compose(heis::compose(g, h), k) ==
               heis::compose(g, heis::compose(h, k)) &&
           heis::compose(g, e) == g && heis::compose(e, g) == g &&
           heis::compose(g, heis::inverse(g)) == e &&
           heis::compose(heis::inverse(g), g) == e;
}

// ---- criterion bodies ------------------------------------------------------

void criterion_axioms(std::string& failures) {
    auto rng = make_rng(1001);
    long bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + (i % 2);
        if (!axioms_hold(rand_int_point(rng, n, 1000000),
                         rand_int_point(rng, n, 1000000),
                         rand_int_point(rng, n, 1000000))) {
            ++bad;
        }
    }
    expect(bad == 0, "integer axiom failures: " + std::to_string(bad),
           failures);

    bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + (i % 2);
        const Int k(2 + (i % 7)); // k in {2..8}
        auto mk = [&] { return heis::reduce_mod(rand_int_point(rng, n, 1000), k); };
        if (!axioms_hold(mk(), mk(), mk())) {
            ++bad;
        }
    }
    expect(bad == 0, "residue axiom failures: " + std::to_string(bad),
           failures);

    bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + (i % 2);
        const Int r(2 + (i % 2));        // r in {2,3}
        const int L = 1 + (i % 4);       // L in {1..4}
        auto mk = [&] {
            return heis::map_point(rand_int_point(rng, n, 1000),
                                   [&](const Int& c) {
                                       return heis::RAdicInt::embed(c, r, L);
                                   });
        };
        if (!axioms_hold(mk(), mk(), mk())) {
            ++bad;
        }
    }
    expect(bad == 0, "r-adic axiom failures: " + std::to_string(bad),
           failures);

    bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + (i % 2);
        if (!axioms_hold(rand_rat_point(rng, n, 30), rand_rat_point(rng, n, 30),
                         rand_rat_point(rng, n, 30))) {
            ++bad;
        }
    }
    expect(bad == 0, "rational axiom failures: " + std::to_string(bad),
           failures);
}

void criterion_conjugation(std::string& failures) {
    auto rng = make_rng(1002);
    long bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + (i % 3);
        const auto g = rand_int_point(rng, n, 1000000);
        const auto h = rand_int_point(rng, n, 1000000);
        // Closed form built here from scratch: only t moves, by
        // x_h . y_g - x_g . y_h.
        std::vector<Int> x = g.x(), y = g.y();
        const Int t = g.t() + heis::dot(h.x(), g.y()) - heis::dot(g.x(), h.y());
        const HeisenbergPoint<Int> closed(std::move(x), std::move(y), t);
        if (heis::conjugate(g, h) != closed) {
            ++bad;
        }
    }
    expect(bad == 0, "closed-form mismatches: " + std::to_string(bad),
           failures);
}

void criterion_orders(std::string& failures) {
    for (int n : {1, 2}) {
        for (long k = 2; k <= 8; ++k) {
            const auto G = heis::finite::FiniteHeisenberg::enumerate(n, Int(k));
            const Int expected =
                heis::pow_int(Int(k), 2 * static_cast<unsigned long>(n) + 1);
            expect(Int(static_cast<long>(G.order())) == expected,
                   "order mismatch at n=" + std::to_string(n) +
                       ", k=" + std::to_string(k),
                   failures);
        }
    }
}

void criterion_indices(std::string& failures) {
    for (auto [r, n] : {std::pair<long, int>{2, 1}, {3, 1}, {2, 2}}) {
        const Int k = heis::pow_int(Int(r), 3);
        const auto G = heis::finite::FiniteHeisenberg::enumerate(n, k);
        const Int dil_index = heis::finite::subgroup_index(
            G, heis::finite::dilation_image(G, Int(r)));
        const Int lat_index = heis::finite::subgroup_index(
            G, heis::finite::lattice_image(G, Int(r)));
        const unsigned long nn = static_cast<unsigned long>(n);
        expect(dil_index == heis::pow_int(Int(r), 2 * nn + 2),
               "dilation-image index at r=" + std::to_string(r) +
                   ", n=" + std::to_string(n) + ": got " +
                   dil_index.get_str(),
               failures);
        expect(lat_index == heis::pow_int(Int(r), 2 * nn + 1),
               "lattice-image index at r=" + std::to_string(r) +
                   ", n=" + std::to_string(n) + ": got " +
                   lat_index.get_str(),
               failures);
    }
}

void criterion_center_commutator(std::string& failures) {
    for (int n : {1, 2}) {
        for (long k = 2; k <= 8; ++k) {
            const auto G = heis::finite::FiniteHeisenberg::enumerate(n, Int(k));
            const auto Z = heis::finite::center_of(G);
            const auto C = heis::finite::commutator_subgroup(G);
            expect(Z.order() == static_cast<std::size_t>(k),
                   "center size at n=" + std::to_string(n) +
                       ", k=" + std::to_string(k),
                   failures);
            bool t_axis = true;
            for (std::size_t i = 0; i < Z.order(); ++i) {
                t_axis = t_axis && Z.members()[i] == i * G.base_count();
            }
            expect(t_axis,
                   "center not the t-axis at n=" + std::to_string(n) +
                       ", k=" + std::to_string(k),
                   failures);
            expect(C.members() == Z.members(),
                   "commutator subgroup differs from center at n=" +
                       std::to_string(n) + ", k=" + std::to_string(k),
                   failures);
        }
    }
    for (long k : {2L, 3L, 4L}) {
        const Int q =
            heis::finite::quotient_center_by_commutator(1, Int(k), 3);
        expect(q == k,
               "center/commutator quotient at k=" + std::to_string(k) +
                   ": got " + q.get_str(),
               failures);
    }
}

void criterion_normality(std::string& failures) {
    for (long r : {2L, 3L}) {
        const Int k = heis::pow_int(Int(r), 3);
        const auto G = heis::finite::FiniteHeisenberg::enumerate(1, k);
        const auto lat = heis::finite::lattice_image(G, Int(r));
        const auto dil = heis::finite::dilation_image(G, Int(r));

        expect(heis::finite::is_normal(G, lat),
               "lattice image not normal at r=" + std::to_string(r),
               failures);
        expect(!heis::finite::is_normal(G, dil),
               "dilation image unexpectedly normal at r=" + std::to_string(r),
               failures);
        expect(heis::finite::is_normal_in(lat, dil),
               "dilation image not normal inside the lattice image at r=" +
                   std::to_string(r),
               failures);

        // Exhaustive cross-check: conjugate every member by every group
        // element (the library predicate itself conjugates only by coset
        // representatives).
        auto brute_normal = [&](const heis::finite::Subgroup& H,
                                const heis::finite::Subgroup& K) {
            for (std::size_t m : H.members()) {
                for (std::size_t c : K.members()) {
                    if (!H.contains(G.conjugate(m, c))) {
                        return false;
                    }
                }
            }
            return true;
        };
        const auto whole = heis::finite::whole_group(G);
        expect(brute_normal(lat, whole), "exhaustive lattice check failed",
               failures);
        expect(!brute_normal(dil, whole),
               "exhaustive dilation check unexpectedly passed", failures);
        expect(brute_normal(dil, lat),
               "exhaustive relative-normality check failed", failures);
    }
}

void criterion_radic(std::string& failures) {
    auto rng = make_rng(1007);
    for (long r : {2L, 3L, 4L, 6L, 10L}) {
        const Int R(r);
        long bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const Int a = rand_int(rng, 1000000000L);
            const Int b = rand_int(rng, 1000000000L);
            const Int c = rand_int(rng, 1000000000L);
            if (a != 0 &&
                heis::radic_abs(a, R) !=
                    heis::make_rat(1, heis::pow_int(R, valuation_oracle(a, R)))) {
                ++bad;
            }
            if (heis::radic_dist(a, c, R) >
                std::max(heis::radic_dist(a, b, R),
                         heis::radic_dist(b, c, R))) {
                ++bad;
            }
            if (a != 0 && b != 0 &&
                heis::radic_abs(a * b, R) >
                    heis::radic_abs(a, R) * heis::radic_abs(b, R)) {
                ++bad;
            }
        }
        expect(bad == 0,
               "r-adic failures at r=" + std::to_string(r) + ": " +
                   std::to_string(bad),
               failures);
    }

    // Exact isometry of the product embedding below the resolution r^L.
    for (long r : {2L, 3L}) {
        const Int R(r);
        const int L = 6;
        const long box = 1;
        long boxv = 1;
        (void)box;
        for (int i = 0; i < L; ++i) {
            boxv *= r;
        }
        long bad = 0;
        for (int i = 0; i < 10000; ++i) {
            const Int a = rand_int(rng, 1000000000L);
            const Int b = a + Int(rand_long(rng, -(boxv - 1), boxv - 1));
            if (heis::ultrametric_distance(
                    heis::ProductElement::embed(a, R, L),
                    heis::ProductElement::embed(b, R, L)) !=
                heis::radic_dist(a, b, R)) {
                ++bad;
            }
        }
        expect(bad == 0,
               "isometry failures at r=" + std::to_string(r) + ": " +
                   std::to_string(bad),
               failures);
    }
}

void criterion_profinite(std::string& failures) {
    auto rng = make_rng(1008);
    long bad = 0;
    for (int n : {1, 2}) {
        for (long r : {2L, 3L}) {
            for (int L = 1; L <= 4; ++L) {
                for (int i = 0; i < 1000; ++i) {
                    const auto g = rand_int_point(rng, n, 100000);
                    const auto h = rand_int_point(rng, n, 100000);
                    const auto wg = heis::profinite::embed(g, Int(r), L);
                    const auto wh = heis::profinite::embed(h, Int(r), L);
                    // Levelwise arithmetic vs r-adic coordinate arithmetic.
                    const auto via_tower = heis::profinite::compose(wg, wh);
                    const auto via_adic = heis::profinite::from_adic(
                        heis::compose(heis::profinite::to_adic(wg),
                                      heis::profinite::to_adic(wh)));
                    if (via_tower != via_adic) {
                        ++bad;
                    }
                    if (heis::profinite::inverse(wg) !=
                        heis::profinite::from_adic(heis::inverse(
                            heis::profinite::to_adic(wg)))) {
                        ++bad;
                    }
                }
            }
        }
    }
    expect(bad == 0, "levelwise/adic mismatches: " + std::to_string(bad),
           failures);

    // Census of coherent elements of the depth-L product for n=1, r=2:
    // expected 2^(3L).  Enumerate every level combination with the coarse
    // levels hoisted out of the inner loops.
    std::vector<std::vector<HeisenbergPoint<Residue>>> levels;
    for (int l = 1; l <= 3; ++l) {
        const long m = 1L << l;
        std::vector<HeisenbergPoint<Residue>> pts;
        for (long x = 0; x < m; ++x) {
            for (long y = 0; y < m; ++y) {
                for (long t = 0; t < m; ++t) {
                    pts.push_back(HeisenbergPoint<Residue>(
                        {Residue(x, Int(m))}, {Residue(y, Int(m))},
                        Residue(t, Int(m))));
                }
            }
        }
        levels.push_back(std::move(pts));
    }
    auto reduces_to = [](const HeisenbergPoint<Residue>& fine,
                         const HeisenbergPoint<Residue>& coarse) {
        const Int& m = coarse.t().modulus();
        return heis::map_point(fine, [&](const Residue& c) {
                   return Residue(c.value(), m);
               }) == coarse;
    };
    long count1 = static_cast<long>(levels[0].size());
    long count2 = 0, count3 = 0;
    for (const auto& a : levels[0]) {
        for (const auto& b : levels[1]) {
            if (!reduces_to(b, a)) {
                continue;
            }
            ++count2;
            for (const auto& c : levels[2]) {
                if (reduces_to(c, b)) {
                    ++count3;
                }
            }
        }
    }
    expect(count1 == 8, "depth-1 census: " + std::to_string(count1), failures);
    expect(count2 == 64, "depth-2 census: " + std::to_string(count2),
           failures);
    expect(count3 == 512, "depth-3 census: " + std::to_string(count3),
           failures);
}

void criterion_solenoid(std::string& failures) {
    auto rng = make_rng(1009);
    long bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const int n = 1 + (i % 2);
        const Int r(2 + (i % 2));
        const int L = i % 4;
        const Int scale = heis::pow_int(r, static_cast<unsigned long>(L));
        const auto g = rand_rat_point(rng, n, 9);

        // Well-definedness: two representatives of one coset reduce alike,
        // and canonical equality agrees with the coset relation.
        std::vector<Rat> lx, ly;
        for (int j = 0; j < n; ++j) {
            lx.emplace_back(rand_int(rng, 4) * scale);
            ly.emplace_back(rand_int(rng, 4) * scale);
        }
        const HeisenbergPoint<Rat> lam(lx, ly, Rat(rand_int(rng, 4) * scale));
        const auto h = heis::compose(g, lam);
        if (heis::solenoid::canonical_reduce(g, r, L) !=
            heis::solenoid::canonical_reduce(h, r, L)) {
            ++bad;
        }
        if (!heis::solenoid::same_coset(g, h, r, L)) {
            ++bad;
        }
        const auto other = rand_rat_point(rng, n, 9);
        if (heis::solenoid::same_coset(g, other, r, L) !=
            (heis::solenoid::canonical_reduce(g, r, L) ==
             heis::solenoid::canonical_reduce(other, r, L))) {
            ++bad;
        }

        // Tower coherence of the projections.
        const auto p = heis::solenoid::canonical_reduce(g, r, L);
        for (int l = 0; l <= L; ++l) {
            if (heis::solenoid::project_level(p, l) !=
                heis::solenoid::canonical_reduce(g, r, l)) {
                ++bad;
            }
        }

        // Action/projection commutation on the circle-bundle base.
        const auto act = rand_rat_point(rng, n, 9);
        const int l = L > 0 ? 1 : 0;
        const Int box = heis::pow_int(r, static_cast<unsigned long>(l));
        const auto [ax, ay] = heis::solenoid::base_projection(
            heis::solenoid::left_action(act, p), l);
        for (int j = 0; j < n; ++j) {
            if (ax[static_cast<std::size_t>(j)] !=
                    heis::rat_mod(act.x(j) + g.x(j), box) ||
                ay[static_cast<std::size_t>(j)] !=
                    heis::rat_mod(act.y(j) + g.y(j), box)) {
                ++bad;
            }
        }

        // The embedding intertwines dilation with the shift.
        if (heis::solenoid::shift_map(heis::solenoid::embed(g, r, L)) !=
            heis::solenoid::embed(heis::dilate(g, Rat(r)), r, L)) {
            ++bad;
        }

        // Identification round trips between the two solenoid models.
        const int Lh = 1 + (i % 2);
        const auto std2L = heis::solenoid::embed(g, r, 2 * Lh);
        const auto dil = heis::solenoid::standard_to_dilated(std2L);
        if (dil != heis::solenoid::embed_dilated(g, r, Lh)) {
            ++bad;
        }
        if (heis::solenoid::dilated_to_standard(dil) !=
            heis::solenoid::embed(g, r, Lh)) {
            ++bad;
        }
    }
    expect(bad == 0, "solenoid property failures: " + std::to_string(bad),
           failures);

    // Preimage counts of the shift at depth 0.
    for (auto [n, r, want] : {std::tuple<int, long, std::size_t>{1, 2, 16},
                              {1, 3, 81}}) {
        const auto p =
            heis::solenoid::canonical_reduce(rand_rat_point(rng, n, 5),
                                             Int(r), 0);
        const auto pre = heis::solenoid::shift_preimages(p);
        bool all_map = true;
        bool distinct = true;
        for (std::size_t a = 0; a < pre.size(); ++a) {
            all_map = all_map && heis::solenoid::shift_map(pre[a]) == p;
            for (std::size_t b = a + 1; b < pre.size(); ++b) {
                distinct = distinct && pre[a] != pre[b];
            }
        }
        expect(pre.size() == want && all_map && distinct,
               "preimage count at r=" + std::to_string(r) + ": got " +
                   std::to_string(pre.size()),
               failures);
    }
}

void criterion_cc_distance(std::string& failures) {
    const double dx = heis::subriemannian::cc_distance_estimate(
        heis::subriemannian::RealPoint({1.0}, {0.0}, 0.0), 64, 20, 0);
    expect(dx >= 0.99 && dx <= 1.01,
           "d(0,(1,0,0)) = " + std::to_string(dx) + " outside [0.99, 1.01]",
           failures);

    const double dido = 2.0 * std::sqrt(std::acos(-1.0));
    const double dt = heis::subriemannian::cc_distance_estimate(
        heis::subriemannian::RealPoint({0.0}, {0.0}, 1.0), 64, 20, 0);
    expect(dt >= 0.98 * dido && dt <= 1.02 * dido,
           "d(0,(0,0,1)) = " + std::to_string(dt) + " outside [0.98, 1.02] * " +
               std::to_string(dido),
           failures);
}

void criterion_scaling(std::string& failures) {
    auto rng = make_rng(1011);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    int tested = 0;
    while (tested < 20) {
        const heis::subriemannian::RealPoint p({coord(rng)}, {coord(rng)},
                                               coord(rng));
        if (heis::subriemannian::box_quasinorm(p) < 0.3) {
            continue; // keep targets away from the origin
        }
        const auto [lhs, rhs] = heis::subriemannian::dilation_scaling_check(
            p, 2.0, 48, 6, 2000 + static_cast<std::uint64_t>(tested));
        const double rel = std::abs(lhs - rhs) / rhs;
        expect(rel <= 0.03,
               "scaling mismatch " + std::to_string(rel) + " at point " +
                   std::to_string(tested),
               failures);
        ++tested;
    }
}

void criterion_volume(std::string& failures) {
    const double e1 = heis::subriemannian::ball_volume_scaling(1, 1.0, 1000000, 0);
    expect(std::abs(e1 - 4.0) <= 0.1,
           "n=1 exponent " + std::to_string(e1) + " outside 4 +- 0.1",
           failures);
    const double e2 = heis::subriemannian::ball_volume_scaling(2, 1.0, 1000000, 0);
    expect(std::abs(e2 - 6.0) <= 0.1,
           "n=2 exponent " + std::to_string(e2) + " outside 6 +- 0.1",
           failures);
}

void criterion_jacobians(std::string& failures) {
    auto rng = make_rng(1013);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + (i % 2);
        std::vector<double> hx, hy;
        for (int j = 0; j < n; ++j) {
            hx.push_back(coord(rng));
            hy.push_back(coord(rng));
        }
        const heis::subriemannian::RealPoint h(hx, hy, coord(rng));
        for (auto side : {heis::subriemannian::Side::kLeft,
                          heis::subriemannian::Side::kRight}) {
            worst = std::max(worst,
                             heis::subriemannian::translation_jacobian_check(
                                 h, side, 5, 500 + static_cast<std::uint64_t>(i)));
        }
    }
    expect(worst < 1e-6,
           "max |det J - 1| = " + std::to_string(worst) + " >= 1e-6",
           failures);
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "group axioms: 10^4 triples each over Z, Z/kZ (k=2..8), "
            "r-adic (r=2,3; L<=4), Q",
         10.0, criterion_axioms},
        {2, "conjugation closed form vs three-factor composition, 10^4 pairs",
         0.0, criterion_conjugation},
        {3, "|H_n(Z/kZ)| = k^(2n+1) for (n,k) in {1,2}x{2..8}", 5.0,
         criterion_orders},
        {4, "image indices r^(2n+2) and r^(2n+1) in H_n(Z/r^3Z)", 30.0,
         criterion_indices},
        {5, "center size k, commutator = center, center/commutator quotient",
         0.0, criterion_center_commutator},
        {6, "normality matrix incl. relative normality of the dilation image",
         0.0, criterion_normality},
        {7, "r-adic ultrametric/submultiplicative/isometry suite", 0.0,
         criterion_radic},
        {8, "profinite levelwise vs r-adic arithmetic; coherent census "
            "2^(3L)",
         0.0, criterion_profinite},
        {9, "solenoid cosets, towers, actions, identifications, preimages",
         10.0, criterion_solenoid},
        {10, "cc distances: (1,0,0) in [0.99,1.01]; (0,0,1) in "
             "[0.98,1.02]*2sqrt(pi); m=64, restarts=20, seed 0",
         60.0, criterion_cc_distance},
        {11, "dilation scaling of cc estimates within 3% on 20 seeded points",
         120.0, criterion_scaling},
        {12, "ball-volume exponents within 0.1 of 4 (n=1) and 6 (n=2) at "
             "10^6 samples",
         60.0, criterion_volume},
        {13, "translation Jacobians: max |det-1| < 1e-6 over 100 "
             "translations, both sides",
         0.0, criterion_jacobians},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::string failures;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(failures);
        } catch (const std::exception& e) {
            expect(false, std::string("exception: ") + e.what(), failures);
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (c.time_cap_seconds > 0 && elapsed > c.time_cap_seconds) {
            expect(false,
                   "took " + std::to_string(elapsed) + "s, cap " +
                       std::to_string(c.time_cap_seconds) + "s",
                   failures);
        }
        std::ostringstream line;
        line << (failures.empty() ? "[PASS]" : "[FAIL]") << " criterion "
             << c.id << ": " << c.label << " (" << std::fixed
             << std::setprecision(2) << elapsed << "s)";
        if (!failures.empty()) {
            line << " -- " << failures;
            ++failed;
        }
        std::cout << line.str() << std::endl;
    }
    if (failed != 0) {
        std::cout << failed << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 13 criteria passed" << std::endl;
    return 0;
}
