#ifndef LATVAL_GROUP_ACTION_HPP
#define LATVAL_GROUP_ACTION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <latval/lattice_geom.hpp>
#include <latval/series.hpp>

namespace latval
{

// Integer matrix [[a, b], [c, d]] acting on column vectors.
struct IntMatrix2 {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 1;

    [[nodiscard]] constexpr std::int64_t det() const noexcept
    {
        return a * d - b * c;
    }
    [[nodiscard]] constexpr Point apply(Point p) const noexcept
    {
        return {a * p.x + b * p.y, c * p.x + d * p.y};
    }
    [[nodiscard]] Matrix2 to_rational() const;

    friend constexpr bool operator==(const IntMatrix2 &, const IntMatrix2 &) = default;
    friend constexpr auto operator<=>(const IntMatrix2 &, const IntMatrix2 &) = default;
    friend constexpr IntMatrix2 operator*(const IntMatrix2 &l, const IntMatrix2 &r)
    {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
};

// Element of Z^2 x| GL(2,Z): p -> M p + v.
class AffineUnimodular
{
public:
    AffineUnimodular() = default;
    // Throws not_unimodular unless |det m| = 1.
    AffineUnimodular(IntMatrix2 m, Point v);

    static AffineUnimodular translation(Point v);
    static AffineUnimodular linear(IntMatrix2 m);

    [[nodiscard]] const IntMatrix2 &matrix() const noexcept
    {
        return m_m;
    }
    [[nodiscard]] Point shift() const noexcept
    {
        return m_v;
    }
    [[nodiscard]] Point apply(Point p) const noexcept
    {
        return m_m.apply(p) + m_v;
    }

    friend bool operator==(const AffineUnimodular &, const AffineUnimodular &) = default;

private:
    IntMatrix2 m_m;
    Point m_v;
};

// (outer o inner)(p) = outer(inner(p)).
AffineUnimodular compose(const AffineUnimodular &outer, const AffineUnimodular &inner);
AffineUnimodular inverse(const AffineUnimodular &g);

// (g . f)(x, y) = exp(alpha x + beta y) f(ax + cy, bx + dy) for
// g(p) = [[a, b], [c, d]] p + (alpha, beta).
Series2 act_on_series(const AffineUnimodular &g, const Series2 &f);

// h(ax + cy, bx + dy).
Series2 act_on_series(const IntMatrix2 &m, const Series2 &f);

LatticePolygon act_on_polygon(const AffineUnimodular &g, const LatticePolygon &p);

// Generators [[1,0],[1,-1]] and [[1,-2],[0,-1]] of the dihedral subgroup.
std::array<IntMatrix2, 2> d4_generators();
// Closure of the generators, sorted.
std::vector<IntMatrix2> d4_group();
// [[1,1],[0,1]], [[0,-1],[1,0]], [[1,0],[0,-1]].
std::array<IntMatrix2, 3> gl2z_generators();

struct InvarianceReport {
    bool invariant = true;
    int verified_order = 0;
    std::optional<IntMatrix2> failing_generator;
    std::optional<Mismatch> first_violation;
};

InvarianceReport is_invariant_under(const Series2 &f, std::span<const IntMatrix2> generators);
InvarianceReport is_d4_invariant(const Series2 &f);

// Linear part with first column w and determinant 1. Among all such matrices
// the second column (u, v) minimizes max(|u|, |v|), then |u| + |v|, then is
// lexicographically smallest. Throws not_primitive.
AffineUnimodular complete_primitive(Point w);

// The map sending e1, e2, o to v1, v2, v0. Throws not_unimodular_triangle.
AffineUnimodular triangle_frame(Point v0, Point v1, Point v2);

} // namespace latval

#endif
