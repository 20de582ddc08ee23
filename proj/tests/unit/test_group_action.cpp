#include <doctest.h>

#include <latval/error.hpp>
#include <latval/group_action.hpp>

#include "../support/generators.hpp"

using namespace latval;

namespace
{

AffineUnimodular random_affine(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<std::int64_t> e(-3, 3);
    for (;;) {
        const IntMatrix2 m{e(rng), e(rng), e(rng), e(rng)};
        if (std::abs(m.det()) == 1) {
            return AffineUnimodular(m, Point{e(rng), e(rng)});
        }
    }
}

Series2 p1(int n)
{
    return Series2(n, {{{2, 0}, 2}, {{1, 1}, 2}, {{0, 2}, 1}});
}

Series2 p2(int n)
{
    return Series2(n, {{{2, 2}, 4}, {{1, 3}, 4}, {{0, 4}, 1}});
}

} // namespace

TEST_CASE("action on series")
{
    const auto shifted = act_on_series(AffineUnimodular::translation({1, 0}), Series2::constant(1, 5));
    CHECK(agree(shifted, mul_exp_linear(Series2::constant(1, 5), 1, 0)));

    for (const auto &m : d4_group()) {
        CHECK(agree(act_on_series(AffineUnimodular::linear(m), p1(6)), p1(6)));
        CHECK(agree(act_on_series(m, p2(6)), p2(6)));
    }
}

TEST_CASE("group law")
{
    const AffineUnimodular g(IntMatrix2{2, 1, 1, 1}, Point{3, -1});
    const auto id = compose(g, inverse(g));
    CHECK(id == AffineUnimodular{});

    const auto t1 = AffineUnimodular::translation({1, 2});
    const auto t2 = AffineUnimodular::translation({-4, 1});
    CHECK(compose(t1, t2) == compose(t2, t1));

    CHECK_THROWS_AS(AffineUnimodular(IntMatrix2{2, 0, 0, 1}, Point{}), Error);
}

TEST_CASE("action on polygons")
{
    const auto t = standard_triangle();
    CHECK(act_on_polygon(AffineUnimodular{}, t) == t);
    CHECK(act_on_polygon(AffineUnimodular::translation({1, 1}), t) == hull_normalize({{1, 1}, {2, 1}, {1, 2}}));
}

TEST_CASE("dihedral subgroup")
{
    const auto g = d4_group();
    CHECK(g.size() == 8);
    for (const auto &a : g) {
        for (const auto &b : g) {
            CHECK(std::find(g.begin(), g.end(), a * b) != g.end());
        }
    }
    CHECK(is_d4_invariant(p1(8)).invariant);
    CHECK(is_d4_invariant(p2(8)).invariant);
    const auto r = is_d4_invariant(Series2::x(4));
    CHECK_FALSE(r.invariant);
    CHECK(r.failing_generator.has_value());
}

TEST_CASE("primitive completion")
{
    CHECK(complete_primitive({1, 0}).matrix() == IntMatrix2{1, 0, 0, 1});
    CHECK(complete_primitive({2, 3}).matrix() == IntMatrix2{2, -1, 3, -1});
    CHECK_THROWS_AS(complete_primitive({2, 4}), Error);
    for (std::int64_t a = -7; a <= 7; ++a) {
        for (std::int64_t b = -7; b <= 7; ++b) {
            if (std::gcd(std::abs(a), std::abs(b)) != 1) {
                continue;
            }
            const auto m = complete_primitive({a, b}).matrix();
            CHECK(m.det() == 1);
            CHECK(m.a == a);
            CHECK(m.c == b);
        }
    }
}

TEST_CASE("triangle frames")
{
    CHECK(triangle_frame({0, 0}, {1, 0}, {0, 1}) == AffineUnimodular{});
    const auto f = triangle_frame({1, 1}, {0, 1}, {1, 0});
    CHECK(f.matrix() == IntMatrix2{-1, 0, 0, -1});
    CHECK(f.shift() == Point{1, 1});
    CHECK_THROWS_AS(triangle_frame({0, 0}, {2, 0}, {0, 1}), Error);
}

TEST_CASE("property: action is a group action")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = testing::random_series(rng, 8);
        const auto g1 = random_affine(rng);
        const auto g2 = random_affine(rng);
        CHECK(agree(act_on_series(compose(g1, g2), f), act_on_series(g1, act_on_series(g2, f))));
        CHECK(agree(act_on_series(inverse(g1), act_on_series(g1, f)), f));
        CHECK(std::abs((g1.matrix() * g2.matrix()).det()) == 1);

        const auto p = testing::random_polygon(rng);
        CHECK(area2(act_on_polygon(g1, p)) == area2(p));
    }
}
