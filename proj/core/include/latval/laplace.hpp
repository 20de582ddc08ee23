#ifndef LATVAL_LAPLACE_HPP
#define LATVAL_LAPLACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <latval/lattice_geom.hpp>
#include <latval/series.hpp>

namespace latval
{

// Integral of s^a t^b over the standard triangle: a! b! / (a + b + 2)!.
Rational triangle_moment(int a, int b);

// mu(a, b) = integral of s^a t^b over P for a + b <= max_degree.
class MomentTable
{
public:
    MomentTable(LatticePolygon polygon, int max_degree);

    [[nodiscard]] const LatticePolygon &polygon() const noexcept
    {
        return m_polygon;
    }
    [[nodiscard]] int max_degree() const noexcept
    {
        return m_max_degree;
    }
    [[nodiscard]] const Rational &at(int a, int b) const;
    Rational &at(int a, int b);

private:
    LatticePolygon m_polygon;
    int m_max_degree;
    std::vector<Rational> m_values;
};

// Sums over a unimodular triangulation (optionally in the seeded order).
// Throws not_full_dimensional.
MomentTable polygon_moments(const LatticePolygon &p, int max_degree, std::optional<std::uint64_t> seed = std::nullopt);

// sum of mu(a, b)/(a! b!) x^a y^b; zero for polygons of dimension < 2.
Series2 laplace_plus(const LatticePolygon &p, int order);

} // namespace latval

#endif
