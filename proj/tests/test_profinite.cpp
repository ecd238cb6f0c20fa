#include <doctest.h>

#include <vector>

#include "heis/profinite.hpp"
#include "test_support.hpp"

using heis::HeisenbergPoint;
using heis::Int;
using heis::Residue;
using heis::profinite::TowerPoint;
using namespace test_support;

namespace {

HeisenbergPoint<Int> ipoint(std::vector<long> x, std::vector<long> y, long t) {
    std::vector<Int> ix(x.begin(), x.end());
    std::vector<Int> iy(y.begin(), y.end());
    return HeisenbergPoint<Int>(std::move(ix), std::move(iy), Int(t));
}

} // namespace

TEST_CASE("levelwise embedding: hand-checked levels") {
    const auto w = heis::profinite::embed(ipoint({1}, {2}, 3), Int(2), 3);
    CHECK(w.depth() == 3);
    CHECK(w.level(1) == heis::reduce_mod(ipoint({1}, {0}, 1), Int(2)));
    CHECK(w.level(2) == heis::reduce_mod(ipoint({1}, {2}, 3), Int(4)));
    CHECK(w.level(3) == heis::reduce_mod(ipoint({1}, {2}, 3), Int(8)));
    CHECK(heis::profinite::is_coherent(w));
    CHECK_THROWS_AS(w.level(0), heis::LevelError);
    CHECK_THROWS_AS(w.level(4), heis::LevelError);
}

TEST_CASE("embedding is a homomorphism at every level") {
    auto rng = make_rng(311);
    for (int n : {1, 2}) {
        for (long r : {2L, 3L}) {
            for (int L = 1; L <= 4; ++L) {
                for (int i = 0; i < 250; ++i) {
                    const auto g = rand_int_point(rng, n, 500);
                    const auto h = rand_int_point(rng, n, 500);
                    const auto wg = heis::profinite::embed(g, Int(r), L);
                    const auto wh = heis::profinite::embed(h, Int(r), L);
                    CHECK(heis::profinite::compose(wg, wh) ==
                          heis::profinite::embed(heis::compose(g, h), Int(r), L));
                    CHECK(heis::profinite::inverse(wg) ==
                          heis::profinite::embed(heis::inverse(g), Int(r), L));
                }
            }
        }
    }
}

TEST_CASE("coherence detects tampering") {
    auto rng = make_rng(322);
    for (int i = 0; i < 500; ++i) {
        const auto g = rand_int_point(rng, 1, 200);
        const auto w = heis::profinite::embed(g, Int(2), 3);
        REQUIRE(heis::profinite::is_coherent(w));

        // Bump the t coordinate of the deepest level by 1; the change
        // survives reduction mod 4, so coherence with level 2 breaks.
        auto levels = w.levels();
        const auto& top = levels.back();
        levels.back() = HeisenbergPoint<Residue>(
            top.x(), top.y(), top.t() + Residue(1, top.t().modulus()));
        const TowerPoint tampered(Int(2), std::move(levels));
        CHECK(!heis::profinite::is_coherent(tampered));
        CHECK_THROWS_AS(heis::profinite::to_adic(tampered),
                        heis::NotCoherentError);
        CHECK_THROWS_AS(heis::profinite::integer_lift(tampered),
                        heis::NotCoherentError);
    }
}

TEST_CASE("coherent towers are exactly the r-adic points") {
    auto rng = make_rng(333);
    for (int i = 0; i < 1500; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const long r = rand_long(rng, 2, 3);
        const int L = static_cast<int>(rand_long(rng, 1, 4));
        const auto g = rand_int_point(rng, n, 10000);
        const auto w = heis::profinite::embed(g, Int(r), L);

        // Identification round trip.
        const auto adic = heis::profinite::to_adic(w);
        CHECK(heis::profinite::from_adic(adic) == w);
        CHECK(adic == heis::map_point(g, [&](const Int& c) {
                  return heis::RAdicInt::embed(c, Int(r), L);
              }));

        // The identification transports the group law.
        const auto h = rand_int_point(rng, n, 10000);
        const auto wh = heis::profinite::embed(h, Int(r), L);
        CHECK(heis::profinite::from_adic(heis::compose(adic,
                                                       heis::profinite::to_adic(wh))) ==
              heis::profinite::compose(w, wh));
    }
}

TEST_CASE("integer lifts exist for coherent towers and round-trip") {
    auto rng = make_rng(344);
    for (int i = 0; i < 1500; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const long r = rand_long(rng, 2, 3);
        const int L = static_cast<int>(rand_long(rng, 1, 4));
        const auto g = rand_int_point(rng, n, 10000);
        const auto w = heis::profinite::embed(g, Int(r), L);
        const auto lift = heis::profinite::integer_lift(w);
        CHECK(heis::profinite::embed(lift, Int(r), L) == w);
        // The lift is the canonical representative in [0, r^L).
        const Int box = heis::pow_int(Int(r), static_cast<unsigned long>(L));
        for (int j = 0; j < n; ++j) {
            CHECK(lift.x(j) == heis::mod_floor(g.x(j), box));
            CHECK(lift.y(j) == heis::mod_floor(g.y(j), box));
        }
        CHECK(lift.t() == heis::mod_floor(g.t(), box));
    }
}

TEST_CASE("census: 64 of the 512 depth-2 towers are coherent") {
    // n = 1, r = 2: level 1 ranges over the 8 elements of H_1(Z/2Z) and
    // level 2 over the 64 elements of H_1(Z/4Z).  Exactly one level-1
    // element matches each level-2 element, so 64 towers are coherent --
    // the count of r-adic points r^(L(2n+1)) with L = 2.
    std::vector<HeisenbergPoint<Residue>> level1, level2;
    for (long x = 0; x < 2; ++x) {
        for (long y = 0; y < 2; ++y) {
            for (long t = 0; t < 2; ++t) {
                level1.push_back(
                    heis::reduce_mod(ipoint({x}, {y}, t), Int(2)));
            }
        }
    }
    for (long x = 0; x < 4; ++x) {
        for (long y = 0; y < 4; ++y) {
            for (long t = 0; t < 4; ++t) {
                level2.push_back(
                    heis::reduce_mod(ipoint({x}, {y}, t), Int(4)));
            }
        }
    }
    int total = 0, coherent = 0;
    for (const auto& a : level1) {
        for (const auto& b : level2) {
            ++total;
            if (heis::profinite::is_coherent(TowerPoint(Int(2), {a, b}))) {
                ++coherent;
            }
        }
    }
    CHECK(total == 512);
    CHECK(coherent == 64);
}

TEST_CASE("embedding is injective on the small box") {
    // Coordinates below r^L / 2 in absolute value cannot collide: distinct
    // integers there differ by less than r^L.
    const Int r(2);
    const int L = 3;
    std::vector<HeisenbergPoint<Int>> pts;
    for (long x = -3; x <= 3; ++x) {
        for (long y = -3; y <= 3; ++y) {
            for (long t = -3; t <= 3; ++t) {
                pts.push_back(ipoint({x}, {y}, t));
            }
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            CHECK(heis::profinite::embed(pts[i], r, L) !=
                  heis::profinite::embed(pts[j], r, L));
        }
    }
    // Outside the box the embedding collapses: 0 and 8 meet at depth 3.
    CHECK(heis::profinite::embed(ipoint({0}, {0}, 0), r, L) ==
          heis::profinite::embed(ipoint({8}, {0}, 0), r, L));
}

TEST_CASE("tower construction validates its shape") {
    const auto l1 = heis::reduce_mod(ipoint({1}, {1}, 1), Int(2));
    const auto l2 = heis::reduce_mod(ipoint({1}, {1}, 1), Int(4));
    CHECK_THROWS_AS(TowerPoint(Int(2), {}), heis::LevelError);
    // Levels out of order.
    CHECK_THROWS_AS(TowerPoint(Int(2), {l2, l1}),
                    heis::IncompatibleOperandsError);
    // Radix mismatch with the moduli.
    CHECK_THROWS_AS(TowerPoint(Int(3), {l1, l2}),
                    heis::IncompatibleOperandsError);
    // Mismatched dimensions across levels.
    const auto wide = heis::reduce_mod(ipoint({1, 0}, {1, 0}, 1), Int(4));
    CHECK_THROWS_AS(TowerPoint(Int(2), {l1, wide}),
                    heis::IncompatibleOperandsError);
    // Mixing towers in the group law.
    const auto w2 = heis::profinite::embed(ipoint({1}, {0}, 0), Int(2), 2);
    const auto w3 = heis::profinite::embed(ipoint({1}, {0}, 0), Int(3), 2);
    CHECK_THROWS_AS(heis::profinite::compose(w2, w3),
                    heis::IncompatibleOperandsError);
}
