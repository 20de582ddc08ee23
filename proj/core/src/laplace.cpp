#include <map>
#include <utility>

#include <latval/error.hpp>
#include <latval/laplace.hpp>

namespace latval
{

namespace
{

// Dense polynomial in (u, v), kept deliberately separate from the series
// types so that the moments do not share code with the engine.
using Poly = std::map<std::pair<int, int>, Rational>;

Poly multiply(const Poly &a, const Poly &b)
{
    Poly out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
        }
    }
    return out;
}

// Powers 0..n of c + p u + q v.
std::vector<Poly> affine_powers(std::int64_t c, std::int64_t p, std::int64_t q, int n)
{
    const Poly base{{{0, 0}, Rational(static_cast<long>(c))},
                    {{1, 0}, Rational(static_cast<long>(p))},
                    {{0, 1}, Rational(static_cast<long>(q))}};
    std::vector<Poly> out{Poly{{{0, 0}, Rational(1)}}};
    for (int k = 1; k <= n; ++k) {
        out.push_back(multiply(out.back(), base));
    }
    return out;
}

} // namespace

Rational triangle_moment(int a, int b)
{
    Rational q(factorial(static_cast<unsigned>(a)) * factorial(static_cast<unsigned>(b)),
               factorial(static_cast<unsigned>(a + b + 2)));
    q.canonicalize();
    return q;
}

MomentTable::MomentTable(LatticePolygon polygon, int max_degree)
    : m_polygon(std::move(polygon)), m_max_degree(max_degree),
      m_values(static_cast<std::size_t>((max_degree + 1) * (max_degree + 2) / 2))
{
}

const Rational &MomentTable::at(int a, int b) const
{
    const int d = a + b;
    return m_values.at(static_cast<std::size_t>(d * (d + 1) / 2 + b));
}

Rational &MomentTable::at(int a, int b)
{
    const int d = a + b;
    return m_values.at(static_cast<std::size_t>(d * (d + 1) / 2 + b));
}

MomentTable polygon_moments(const LatticePolygon &p, int max_degree, std::optional<std::uint64_t> seed)
{
    const auto tri = unimodular_triangulation(p, seed);
    MomentTable table(p, max_degree);
    for (const auto &t : tri.triangles) {
        const Point v0 = tri.points[t[0]];
        const Point e1 = tri.points[t[1]] - v0;
        const Point e2 = tri.points[t[2]] - v0;
        // (s, t) = v0 + u e1 + v e2 has Jacobian +-1 on a unimodular triangle.
        const auto sp = affine_powers(v0.x, e1.x, e2.x, max_degree);
        const auto tp = affine_powers(v0.y, e1.y, e2.y, max_degree);
        for (int d = 0; d <= max_degree; ++d) {
            for (int b = 0; b <= d; ++b) {
                const int a = d - b;
                Rational sum;
                for (const auto &[e, c] : multiply(sp[static_cast<std::size_t>(a)], tp[static_cast<std::size_t>(b)])) {
                    sum += c * triangle_moment(e.first, e.second);
                }
                table.at(a, b) += sum;
            }
        }
    }
    return table;
}

Series2 laplace_plus(const LatticePolygon &p, int order)
{
    if (p.dim() < 2) {
        return Series2(order);
    }
    const auto mu = polygon_moments(p, order);
    Series2::Terms terms;
    for (int d = 0; d <= order; ++d) {
        for (int b = 0; b <= d; ++b) {
            const int a = d - b;
            const Rational c = mu.at(a, b) / (factorial_rational(static_cast<unsigned>(a)) * factorial_rational(static_cast<unsigned>(b)));
            if (sgn(c) != 0) {
                terms.emplace(Exponent{a, b}, c);
            }
        }
    }
    return Series2(order, std::move(terms));
}

} // namespace latval
