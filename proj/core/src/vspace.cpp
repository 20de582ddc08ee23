#include <algorithm>
#include <numeric>

#include <latval/laws.hpp>
#include <latval/vspace.hpp>

#include "linalg.hpp"

namespace latval
{

namespace
{

using Constraint = Series2 (*)(const Series2 &);

Series2 aprime_defect(const Series2 &f)
{
    const auto s = law_sides(LawId::Aprime, f);
    return s.lhs - s.rhs;
}

Series2 e_defect(const Series2 &f)
{
    const auto s = law_sides(LawId::E, f);
    return s.lhs - s.rhs;
}

Series2 adoubleprime_defect(const Series2 &f)
{
    const auto s = law_sides(LawId::Adoubleprime, f);
    return s.lhs - s.rhs;
}

// sigma(-t, -s) - sigma(s, t).
Series2 st_reflection_defect(const Series2 &f)
{
    return linear_substitute(f, Matrix2{Rational(0), Rational(-1), Rational(-1), Rational(0)}) - f;
}

// One linear equation per coefficient of degree `degree` in the defect of
// each constraint; column q is the monomial x^(d-q) y^q.
VdBasis solve(int d, std::initializer_list<std::pair<Constraint, int>> constraints, PivotOrder pivots)
{
    const auto cols = static_cast<std::size_t>(d + 1);
    detail::RationalMatrix rows;
    for (const auto &[defect, shift] : constraints) {
        const int deg = d + shift;
        std::vector<std::vector<Rational>> block(static_cast<std::size_t>(deg + 1), std::vector<Rational>(cols));
        for (int q = 0; q <= d; ++q) {
            const auto image = defect(Series2::monomial(1, d - q, q, d));
            for (const auto &[e, c] : image.terms()) {
                if (e.degree() == deg) {
                    block[static_cast<std::size_t>(e.y)][static_cast<std::size_t>(q)] = c;
                }
            }
        }
        for (auto &row : block) {
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (pivots == PivotOrder::reversed) {
        std::reverse(order.begin(), order.end());
    }
    VdBasis out;
    out.degree = d;
    for (const auto &v : detail::kernel_basis(rows, cols, order)) {
        Series2::Terms terms;
        for (int q = 0; q <= d; ++q) {
            if (sgn(v[static_cast<std::size_t>(q)]) != 0) {
                terms.emplace(Exponent{d - q, q}, v[static_cast<std::size_t>(q)]);
            }
        }
        out.basis.emplace_back(d, std::move(terms));
    }
    return out;
}

} // namespace

VdBasis vd_basis(int d, PivotOrder pivots)
{
    return solve(d, {{&aprime_defect, 1}, {&e_defect, 0}}, pivots);
}

VdBasis st_basis(int d, PivotOrder pivots)
{
    return solve(d, {{&adoubleprime_defect, 1}, {&st_reflection_defect, 0}}, pivots);
}

int predicted_dim(int d)
{
    if (d % 2 != 0) {
        return 0;
    }
    return d % 12 == 2 ? d / 12 : d / 12 + 1;
}

std::vector<DimRow> dims_table(int d_max)
{
    std::vector<DimRow> rows;
    for (int d = 0; d <= d_max; ++d) {
        DimRow r;
        r.degree = d;
        r.computed = static_cast<int>(vd_basis(d).basis.size());
        r.predicted = predicted_dim(d);
        r.match = r.computed == r.predicted;
        rows.push_back(r);
    }
    return rows;
}

Series2 with_order(const Series2 &polynomial, int order)
{
    return Series2(order, polynomial.terms());
}

} // namespace latval
