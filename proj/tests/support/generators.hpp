#ifndef LATVAL_TESTS_GENERATORS_HPP
#define LATVAL_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>

#include <latval/lattice_geom.hpp>
#include <latval/series.hpp>

namespace latval::testing
{

inline Rational small_rational(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

// Sparse series with roughly `density` percent of the monomials filled.
inline Series2 random_series(std::mt19937_64 &rng, int order, int density = 30)
{
    std::uniform_int_distribution<int> pct(0, 99);
    Series2::Terms terms;
    for (int d = 0; d <= order; ++d) {
        for (int q = 0; q <= d; ++q) {
            if (pct(rng) < density) {
                auto c = small_rational(rng);
                if (sgn(c) != 0) {
                    terms.emplace(Exponent{d - q, q}, c);
                }
            }
        }
    }
    return Series2(order, std::move(terms));
}

inline Series2 random_unit(std::mt19937_64 &rng, int order)
{
    auto f = random_series(rng, order);
    return f - Series2::constant(f.coeff(0, 0), order) + Series2::constant(Rational(1 + static_cast<long>(rng() % 5)), order);
}

// Convex lattice polygon as the hull of a few random points in a box.
inline LatticePolygon random_polygon(std::mt19937_64 &rng, int box = 4, int points = 6)
{
    std::uniform_int_distribution<int> coord(-box, box);
    for (;;) {
        std::vector<Point> pts;
        for (int i = 0; i < points; ++i) {
            pts.push_back({coord(rng), coord(rng)});
        }
        auto p = hull_normalize(pts);
        if (p.dim() == 2) {
            return p;
        }
    }
}

} // namespace latval::testing

#endif
