#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include <latval/error.hpp>
#include <latval/group_action.hpp>

namespace latval
{

Matrix2 IntMatrix2::to_rational() const
{
    return {Rational(static_cast<long>(a)), Rational(static_cast<long>(b)), Rational(static_cast<long>(c)),
            Rational(static_cast<long>(d))};
}

AffineUnimodular::AffineUnimodular(IntMatrix2 m, Point v) : m_m(m), m_v(v)
{
    if (std::abs(m.det()) != 1) {
        throw Error(ErrorCode::not_unimodular, "linear part has determinant " + std::to_string(m.det()));
    }
}

AffineUnimodular AffineUnimodular::translation(Point v)
{
    return AffineUnimodular(IntMatrix2{}, v);
}

AffineUnimodular AffineUnimodular::linear(IntMatrix2 m)
{
    return AffineUnimodular(m, Point{});
}

AffineUnimodular compose(const AffineUnimodular &outer, const AffineUnimodular &inner)
{
    return AffineUnimodular(outer.matrix() * inner.matrix(), outer.matrix().apply(inner.shift()) + outer.shift());
}

AffineUnimodular inverse(const AffineUnimodular &g)
{
    const auto &m = g.matrix();
    const auto det = m.det();
    // det = +-1, so the adjugate divided by det stays integral.
    const IntMatrix2 inv{m.d * det, -m.b * det, -m.c * det, m.a * det};
    const Point t = inv.apply(g.shift());
    return AffineUnimodular(inv, Point{-t.x, -t.y});
}

Series2 act_on_series(const IntMatrix2 &m, const Series2 &f)
{
    return linear_substitute(f, m.to_rational());
}

Series2 act_on_series(const AffineUnimodular &g, const Series2 &f)
{
    auto out = act_on_series(g.matrix(), f);
    const Point v = g.shift();
    if (v.x != 0 || v.y != 0) {
        out = mul_exp_linear(out, Rational(static_cast<long>(v.x)), Rational(static_cast<long>(v.y)));
    }
    return out;
}

LatticePolygon act_on_polygon(const AffineUnimodular &g, const LatticePolygon &p)
{
    std::vector<Point> image;
    image.reserve(p.vertices().size());
    for (const auto &v : p.vertices()) {
        image.push_back(g.apply(v));
    }
    return hull_normalize(image);
}

std::array<IntMatrix2, 2> d4_generators()
{
    return {IntMatrix2{1, 0, 1, -1}, IntMatrix2{1, -2, 0, -1}};
}

std::vector<IntMatrix2> d4_group()
{
    const auto gens = d4_generators();
    std::set<IntMatrix2> group{IntMatrix2{}};
    std::vector<IntMatrix2> frontier{IntMatrix2{}};
    while (!frontier.empty()) {
        std::vector<IntMatrix2> next;
        for (const auto &g : frontier) {
            for (const auto &s : gens) {
                const auto h = g * s;
                if (group.insert(h).second) {
                    next.push_back(h);
                }
            }
        }
        frontier = std::move(next);
    }
    return {group.begin(), group.end()};
}

std::array<IntMatrix2, 3> gl2z_generators()
{
    return {IntMatrix2{1, 1, 0, 1}, IntMatrix2{0, -1, 1, 0}, IntMatrix2{1, 0, 0, -1}};
}

InvarianceReport is_invariant_under(const Series2 &f, std::span<const IntMatrix2> generators)
{
    InvarianceReport report;
    report.verified_order = f.order();
    for (const auto &g : generators) {
        const auto cmp = compare(act_on_series(g, f), f);
        if (!cmp.holds) {
            report.invariant = false;
            report.failing_generator = g;
            report.first_violation = cmp.first_violation;
            return report;
        }
    }
    return report;
}

InvarianceReport is_d4_invariant(const Series2 &f)
{
    const auto gens = d4_generators();
    return is_invariant_under(f, gens);
}

AffineUnimodular complete_primitive(Point w)
{
    if (std::gcd(std::abs(w.x), std::abs(w.y)) != 1) {
        throw Error(ErrorCode::not_primitive,
                    "(" + std::to_string(w.x) + ", " + std::to_string(w.y) + ") is not a primitive vector");
    }
    // Extended Euclid on (w.x, w.y): s w.x + t w.y = g with g = +-1.
    std::int64_t r0 = w.x, r1 = w.y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const auto q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
        std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
    }
    // det [[w.x, u], [w.y, v]] = w.x v - u w.y = 1 with v = s0/r0, u = -t0/r0.
    const std::int64_t v0 = s0 * r0;
    const std::int64_t u0 = -t0 * r0;
    // The solution set is (u0, v0) + k w; search around the real minimizer.
    const double norm = static_cast<double>(w.x * w.x + w.y * w.y);
    const auto centre = static_cast<std::int64_t>(-(static_cast<double>(u0 * w.x + v0 * w.y)) / norm);
    std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t> best{-1, 0, 0, 0};
    for (auto k = centre - 3; k <= centre + 3; ++k) {
        const auto u = u0 + k * w.x;
        const auto v = v0 + k * w.y;
        const std::tuple cand{std::max(std::abs(u), std::abs(v)), std::abs(u) + std::abs(v), u, v};
        if (std::get<0>(best) < 0 || cand < best) {
            best = cand;
        }
    }
    return AffineUnimodular::linear(IntMatrix2{w.x, std::get<2>(best), w.y, std::get<3>(best)});
}

AffineUnimodular triangle_frame(Point v0, Point v1, Point v2)
{
    const Point a = v1 - v0;
    const Point b = v2 - v0;
    if (std::abs(cross(a, b)) != 1) {
        throw Error(ErrorCode::not_unimodular_triangle, "twice-area " + std::to_string(std::abs(cross(a, b))));
    }
    return AffineUnimodular(IntMatrix2{a.x, b.x, a.y, b.y}, v0);
}

} // namespace latval
