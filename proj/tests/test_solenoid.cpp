#include <doctest.h>

#include <vector>

#include "heis/solenoid.hpp"
#include "test_support.hpp"

using heis::HeisenbergPoint;
using heis::Int;
using heis::Rat;
using namespace test_support;

namespace {

HeisenbergPoint<Rat> qpoint(std::vector<Rat> x, std::vector<Rat> y, Rat t) {
    return HeisenbergPoint<Rat>(std::move(x), std::move(y), std::move(t));
}

// A random element of H_n(r^L Z) to translate coset representatives by.
HeisenbergPoint<Rat> rand_lattice_point(std::mt19937_64& rng, int n,
                                        const Int& scale) {
    std::vector<Rat> x, y;
    for (int i = 0; i < n; ++i) {
        x.emplace_back(rand_int(rng, 5) * scale);
    }
    for (int i = 0; i < n; ++i) {
        y.emplace_back(rand_int(rng, 5) * scale);
    }
    return qpoint(std::move(x), std::move(y), Rat(rand_int(rng, 5) * scale));
}

} // namespace

TEST_CASE("canonical reduction: the worked example and the box invariant") {
    // Reducing (5/2, 3, 7/3) against H_1(2Z): x -> 1/2 and y -> 1 first;
    // clearing y by -2 drags t along by x * (-2) = -5, and 7/3 - 5 = -8/3
    // then reduces mod 2 to 4/3.
    const auto p = heis::solenoid::canonical_reduce(
        qpoint({Rat(5, 2)}, {Rat(3)}, Rat(7, 3)), Int(2), 1);
    CHECK(p.rep() == qpoint({Rat(1, 2)}, {Rat(1)}, Rat(4, 3)));
    CHECK(p.modulus() == 2);

    auto rng = make_rng(411);
    for (int i = 0; i < 2000; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const long r = rand_long(rng, 2, 3);
        const int L = static_cast<int>(rand_long(rng, 0, 3));
        const auto g = rand_rat_point(rng, n, 12);
        const auto q = heis::solenoid::canonical_reduce(g, Int(r), L);
        const Rat box(heis::pow_int(Int(r), static_cast<unsigned long>(L)));
        for (int j = 0; j < n; ++j) {
            CHECK(q.rep().x(j) >= 0);
            CHECK(q.rep().x(j) < box);
            CHECK(q.rep().y(j) >= 0);
            CHECK(q.rep().y(j) < box);
        }
        CHECK(q.rep().t() >= 0);
        CHECK(q.rep().t() < box);
        // Reduction lands in the same left coset.
        CHECK(heis::solenoid::same_coset(g, q.rep(), Int(r), L));
        // And is idempotent.
        CHECK(heis::solenoid::canonical_reduce(q.rep(), Int(r), L) == q);
    }
}

TEST_CASE("canonical forms agree with the coset relation") {
    auto rng = make_rng(422);
    for (int i = 0; i < 1500; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 0, 3));
        const Int scale = heis::pow_int(r, static_cast<unsigned long>(L));
        const auto g = rand_rat_point(rng, n, 9);

        // Right-translating by a lattice element never changes the point.
        const auto lam = rand_lattice_point(rng, n, scale);
        const auto h = heis::compose(g, lam);
        CHECK(heis::solenoid::same_coset(g, h, r, L));
        CHECK(heis::solenoid::canonical_reduce(g, r, L) ==
              heis::solenoid::canonical_reduce(h, r, L));

        // A generic second point is almost surely in a different coset, and
        // the two routes must again agree.
        const auto other = rand_rat_point(rng, n, 9);
        CHECK(heis::solenoid::same_coset(g, other, r, L) ==
              (heis::solenoid::canonical_reduce(g, r, L) ==
               heis::solenoid::canonical_reduce(other, r, L)));
    }
}

TEST_CASE("projection to coarser levels is coherent") {
    auto rng = make_rng(433);
    for (int i = 0; i < 1200; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 1, 3));
        const auto g = rand_rat_point(rng, n, 9);
        const auto p = heis::solenoid::canonical_reduce(g, r, L);
        for (int l = 0; l <= L; ++l) {
            CHECK(heis::solenoid::project_level(p, l) ==
                  heis::solenoid::canonical_reduce(g, r, l));
        }
        CHECK_THROWS_AS(heis::solenoid::project_level(p, L + 1),
                        heis::LevelError);
        CHECK_THROWS_AS(heis::solenoid::project_level(p, -1),
                        heis::LevelError);
    }
}

TEST_CASE("left action is a group action intertwined by the embedding") {
    auto rng = make_rng(444);
    for (int i = 0; i < 1200; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 0, 3));
        const auto g = rand_rat_point(rng, n, 9);
        const auto h1 = rand_rat_point(rng, n, 9);
        const auto h2 = rand_rat_point(rng, n, 9);
        const auto p = heis::solenoid::embed(g, r, L);

        CHECK(heis::solenoid::left_action(
                  h1, heis::solenoid::left_action(h2, p)) ==
              heis::solenoid::left_action(heis::compose(h1, h2), p));
        CHECK(heis::solenoid::left_action(h1, p) ==
              heis::solenoid::embed(heis::compose(h1, g), r, L));
        CHECK(heis::solenoid::left_action(heis::identity_like(g), p) == p);
    }
}

TEST_CASE("base projection forgets the fiber and adds on the base") {
    auto rng = make_rng(455);
    for (int i = 0; i < 1200; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 1, 3));
        const auto g = rand_rat_point(rng, n, 9);
        const auto p = heis::solenoid::embed(g, r, L);
        const int l = static_cast<int>(rand_long(rng, 0, L));
        const Int box = heis::pow_int(r, static_cast<unsigned long>(l));

        const auto [bx, by] = heis::solenoid::base_projection(p, l);
        for (int j = 0; j < n; ++j) {
            CHECK(bx[static_cast<std::size_t>(j)] ==
                  heis::rat_mod(g.x(j), box));
            CHECK(by[static_cast<std::size_t>(j)] ==
                  heis::rat_mod(g.y(j), box));
        }

        // Central translations move the fiber only.
        auto central = heis::identity_like(g);
        const auto shifted = heis::solenoid::left_action(
            qpoint(central.x(), central.y(), rand_rat(rng, 9)), p);
        CHECK(heis::solenoid::base_projection(shifted, l) ==
              heis::solenoid::base_projection(p, l));

        // On the base the action is plain addition mod r^l.
        const auto h = rand_rat_point(rng, n, 9);
        const auto [ax, ay] = heis::solenoid::base_projection(
            heis::solenoid::left_action(h, p), l);
        for (int j = 0; j < n; ++j) {
            CHECK(ax[static_cast<std::size_t>(j)] ==
                  heis::rat_mod(h.x(j) + g.x(j), box));
            CHECK(ay[static_cast<std::size_t>(j)] ==
                  heis::rat_mod(h.y(j) + g.y(j), box));
        }
    }
}

TEST_CASE("shift map: well-defined, intertwines dilation, counts preimages") {
    auto rng = make_rng(466);
    for (int i = 0; i < 800; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 0, 2));
        const Int scale = heis::pow_int(r, static_cast<unsigned long>(L));
        const auto g = rand_rat_point(rng, n, 9);

        // shift is constant on cosets and matches the dilation upstairs.
        const auto h = heis::compose(g, rand_lattice_point(rng, n, scale));
        CHECK(heis::solenoid::shift_map(heis::solenoid::embed(g, r, L)) ==
              heis::solenoid::shift_map(heis::solenoid::embed(h, r, L)));
        CHECK(heis::solenoid::shift_map(heis::solenoid::embed(g, r, L)) ==
              heis::solenoid::embed(heis::dilate(g, Rat(r)), r, L));
    }

    // Every depth-0 point has exactly r^(2n+2) preimages, each mapping back.
    for (auto [n, r] : {std::pair<int, long>{1, 2}, {1, 3}, {2, 2}}) {
        const auto g = rand_rat_point(rng, n, 5);
        const auto p = heis::solenoid::canonical_reduce(g, Int(r), 0);
        const auto pre = heis::solenoid::shift_preimages(p);
        std::size_t expected = 1;
        for (int i = 0; i < 2 * n + 2; ++i) {
            expected *= static_cast<std::size_t>(r);
        }
        CHECK(pre.size() == expected);
        for (std::size_t a = 0; a < pre.size(); ++a) {
            CHECK(heis::solenoid::shift_map(pre[a]) == p);
            for (std::size_t b = a + 1; b < pre.size(); ++b) {
                CHECK(pre[a] != pre[b]);
            }
        }
    }

    const auto deep = heis::solenoid::canonical_reduce(
        rand_rat_point(rng, 1, 5), Int(2), 1);
    CHECK_THROWS_AS(heis::solenoid::shift_preimages(deep), heis::LevelError);
}

TEST_CASE("circle solenoid: embedding, projection, addition") {
    const auto c = heis::solenoid::circle_embed(Rat(7, 3), Int(2), 1);
    CHECK(c.rep() == Rat(1, 3));
    CHECK(heis::solenoid::pi0(c) == Rat(1, 3));

    const auto d = heis::solenoid::circle_embed(Rat(-1, 4), Int(2), 2);
    CHECK(d.rep() == Rat(15, 4));
    CHECK(heis::solenoid::pi0(d) == Rat(3, 4));

    auto rng = make_rng(477);
    for (int i = 0; i < 2000; ++i) {
        const Int r(rand_long(rng, 2, 4));
        const int L = static_cast<int>(rand_long(rng, 0, 3));
        const Rat a = rand_rat(rng, 20);
        const Rat b = rand_rat(rng, 20);
        const auto ca = heis::solenoid::circle_embed(a, r, L);
        const auto cb = heis::solenoid::circle_embed(b, r, L);
        CHECK(ca + cb == heis::solenoid::circle_embed(a + b, r, L));
        CHECK(heis::solenoid::pi0(ca) == heis::rat_mod(a, Int(1)));
        // Levels are determined by the representative.
        const Int box = heis::pow_int(r, static_cast<unsigned long>(L));
        CHECK(ca.rep() == heis::rat_mod(a, box));
    }
}

TEST_CASE("identification with the dilated-lattice solenoid") {
    auto rng = make_rng(488);
    for (int i = 0; i < 1200; ++i) {
        const int n = static_cast<int>(rand_long(rng, 1, 2));
        const Int r(rand_long(rng, 2, 3));
        const int L = static_cast<int>(rand_long(rng, 1, 2));
        const auto g = rand_rat_point(rng, n, 9);

        // Embeddings commute with both directions of the identification.
        const auto std2L = heis::solenoid::embed(g, r, 2 * L);
        const auto dil = heis::solenoid::standard_to_dilated(std2L);
        CHECK(dil == heis::solenoid::embed_dilated(g, r, L));
        CHECK(heis::solenoid::dilated_to_standard(dil) ==
              heis::solenoid::embed(g, r, L));

        // The composite is exactly the coarsening by L levels.
        CHECK(heis::solenoid::dilated_to_standard(dil) ==
              heis::solenoid::project_level(std2L, L));

        // The dilated canonical box is anisotropic: t lives mod r^{2L}.
        CHECK(dil.xy_modulus() == heis::pow_int(r, static_cast<unsigned long>(L)));
        CHECK(dil.t_modulus() ==
              heis::pow_int(r, static_cast<unsigned long>(2 * L)));

        // Left actions agree through the identification.
        const auto h = rand_rat_point(rng, n, 9);
        CHECK(heis::solenoid::left_action(h, dil) ==
              heis::solenoid::standard_to_dilated(
                  heis::solenoid::left_action(h, std2L)));
    }

    const auto odd = heis::solenoid::embed(rand_rat_point(rng, 1, 5), Int(2), 3);
    CHECK_THROWS_AS(heis::solenoid::standard_to_dilated(odd),
                    heis::LevelError);
}

TEST_CASE("construction validates depth and radix") {
    CHECK_THROWS_AS(heis::solenoid::canonical_reduce(
                        qpoint({Rat(1)}, {Rat(1)}, Rat(1)), Int(2), -1),
                    heis::LevelError);
    CHECK_THROWS_AS(heis::solenoid::canonical_reduce(
                        qpoint({Rat(1)}, {Rat(1)}, Rat(1)), Int(1), 2),
                    heis::InvalidRadixError);
    CHECK_THROWS_AS(heis::solenoid::circle_embed(Rat(1), Int(2), -2),
                    heis::LevelError);

    // Depth 0 is legitimate: everything reduces into the unit box.
    const auto p = heis::solenoid::canonical_reduce(
        qpoint({Rat(-7, 2)}, {Rat(9, 4)}, Rat(22, 7)), Int(3), 0);
    CHECK(p.rep().x(0) == Rat(1, 2));
    CHECK(p.rep().y(0) == Rat(1, 4));
    CHECK(p.modulus() == 1);
}
