#include <algorithm>
#include <cassert>
#include <string>
#include <utility>

#include <latval/error.hpp>
#include <latval/series.hpp>

namespace latval
{

namespace
{

// Dense scratch buffer for the coefficients of total degree <= order, laid
// out degree by degree: (p, q) lives at d(d+1)/2 + q with d = p + q.
class Dense
{
public:
    explicit Dense(int order) : m_order(order), m_c(order >= 0 ? size(order) : 0) {}

    static std::size_t size(int order)
    {
        const auto n = static_cast<std::size_t>(order + 1);
        return n * (n + 1) / 2;
    }
    static std::size_t index(int p, int q)
    {
        const auto d = static_cast<std::size_t>(p + q);
        return d * (d + 1) / 2 + static_cast<std::size_t>(q);
    }

    Rational &at(int p, int q)
    {
        return m_c[index(p, q)];
    }
    const Rational &at(int p, int q) const
    {
        return m_c[index(p, q)];
    }
    [[nodiscard]] int order() const
    {
        return m_order;
    }

    Series2 to_series() const
    {
        Series2::Terms terms;
        for (int d = 0; d <= m_order; ++d) {
            for (int q = 0; q <= d; ++q) {
                const auto &c = at(d - q, q);
                if (sgn(c) != 0) {
                    terms.emplace_hint(terms.end(), Exponent{d - q, q}, c);
                }
            }
        }
        return Series2(m_order, std::move(terms));
    }

    static Dense from_series(const Series2 &f, int order)
    {
        Dense out(order);
        for (const auto &[e, c] : f.terms()) {
            if (e.degree() > order) {
                break;
            }
            out.at(e.x, e.y) = c;
        }
        return out;
    }

private:
    int m_order;
    std::vector<Rational> m_c;
};

// Homogeneous polynomial of degree n stored as coefficients of x^(n-k) y^k.
using Homogeneous = std::vector<Rational>;

Homogeneous hmul(const Homogeneous &a, const Homogeneous &b)
{
    Homogeneous out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Powers L^0 .. L^n of the linear form u x + v y.
std::vector<Homogeneous> linear_powers(const Rational &u, const Rational &v, int n)
{
    std::vector<Homogeneous> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0) + 1));
    out.push_back(Homogeneous{Rational(1)});
    const Homogeneous lin{u, v};
    for (int k = 1; k <= n; ++k) {
        out.push_back(hmul(out.back(), lin));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Series1

Series1::Series1(int order) : m_order(std::max(order, -1)) {}

Series1::Series1(int order, Terms terms) : m_order(std::max(order, -1)), m_terms(std::move(terms))
{
    normalize();
}

Series1 Series1::constant(const Rational &c, int order)
{
    return Series1(order, Terms{{0, c}});
}

void Series1::normalize()
{
    for (auto it = m_terms.begin(); it != m_terms.end();) {
        if (it->first < 0 || it->first > m_order || sgn(it->second) == 0) {
            it = m_terms.erase(it);
        } else {
            ++it;
        }
    }
}

Rational Series1::coeff(int k) const
{
    const auto it = m_terms.find(k);
    return it == m_terms.end() ? Rational(0) : it->second;
}

std::optional<int> Series1::valuation() const
{
    if (m_terms.empty()) {
        return std::nullopt;
    }
    return m_terms.begin()->first;
}

Series1 Series1::truncated(int order) const
{
    return Series1(std::min(order, m_order), m_terms);
}

Series1 operator+(const Series1 &a, const Series1 &b)
{
    auto terms = a.m_terms;
    for (const auto &[k, c] : b.m_terms) {
        terms[k] += c;
    }
    return Series1(std::min(a.m_order, b.m_order), std::move(terms));
}

Series1 operator-(const Series1 &a)
{
    auto terms = a.m_terms;
    for (auto &[k, c] : terms) {
        c = -c;
    }
    return Series1(a.m_order, std::move(terms));
}

Series1 operator-(const Series1 &a, const Series1 &b)
{
    return a + (-b);
}

Series1 operator*(const Series1 &a, const Series1 &b)
{
    const int order = std::min(a.m_order, b.m_order);
    std::vector<Rational> acc(static_cast<std::size_t>(order + 1));
    for (const auto &[i, ci] : a.m_terms) {
        if (i > order) {
            break;
        }
        for (const auto &[j, cj] : b.m_terms) {
            if (i + j > order) {
                break;
            }
            acc[static_cast<std::size_t>(i + j)] += ci * cj;
        }
    }
    Series1::Terms terms;
    for (int k = 0; k <= order; ++k) {
        terms.emplace(k, std::move(acc[static_cast<std::size_t>(k)]));
    }
    return Series1(order, std::move(terms));
}

Series1 operator*(const Rational &s, const Series1 &a)
{
    auto terms = a.m_terms;
    for (auto &[k, c] : terms) {
        c *= s;
    }
    return Series1(a.m_order, std::move(terms));
}

// ---------------------------------------------------------------------------
// Series2

Series2::Series2(int order) : m_order(std::max(order, -1)) {}

Series2::Series2(int order, Terms terms) : m_order(std::max(order, -1)), m_terms(std::move(terms))
{
    normalize();
}

Series2 Series2::constant(const Rational &c, int order)
{
    return Series2(order, Terms{{Exponent{0, 0}, c}});
}

Series2 Series2::monomial(const Rational &c, int px, int py, int order)
{
    return Series2(order, Terms{{Exponent{px, py}, c}});
}

Series2 Series2::x(int order)
{
    return monomial(Rational(1), 1, 0, order);
}

Series2 Series2::y(int order)
{
    return monomial(Rational(1), 0, 1, order);
}

void Series2::normalize()
{
    for (auto it = m_terms.begin(); it != m_terms.end();) {
        const auto e = it->first;
        if (e.x < 0 || e.y < 0 || e.degree() > m_order || sgn(it->second) == 0) {
            it = m_terms.erase(it);
        } else {
            ++it;
        }
    }
}

Rational Series2::coeff(int px, int py) const
{
    const auto it = m_terms.find(Exponent{px, py});
    return it == m_terms.end() ? Rational(0) : it->second;
}

std::optional<int> Series2::valuation() const
{
    if (m_terms.empty()) {
        return std::nullopt;
    }
    return m_terms.begin()->first.degree();
}

Series2 Series2::truncated(int order) const
{
    return Series2(std::min(order, m_order), m_terms);
}

Series2 operator+(const Series2 &a, const Series2 &b)
{
    auto terms = a.m_terms;
    for (const auto &[e, c] : b.m_terms) {
        terms[e] += c;
    }
    return Series2(std::min(a.m_order, b.m_order), std::move(terms));
}

Series2 operator-(const Series2 &a)
{
    auto terms = a.m_terms;
    for (auto &[e, c] : terms) {
        c = -c;
    }
    return Series2(a.m_order, std::move(terms));
}

Series2 operator-(const Series2 &a, const Series2 &b)
{
    auto terms = a.m_terms;
    for (const auto &[e, c] : b.m_terms) {
        terms[e] -= c;
    }
    return Series2(std::min(a.m_order, b.m_order), std::move(terms));
}

Series2 operator*(const Series2 &a, const Series2 &b)
{
    const int order = std::min(a.m_order, b.m_order);
    Dense acc(order);
    for (const auto &[ea, ca] : a.m_terms) {
        if (ea.degree() > order) {
            break;
        }
        for (const auto &[eb, cb] : b.m_terms) {
            if (ea.degree() + eb.degree() > order) {
                break;
            }
            acc.at(ea.x + eb.x, ea.y + eb.y) += ca * cb;
        }
    }
    return acc.to_series();
}

Series2 operator*(const Rational &s, const Series2 &a)
{
    if (sgn(s) == 0) {
        return Series2(a.m_order);
    }
    auto terms = a.m_terms;
    for (auto &[e, c] : terms) {
        c *= s;
    }
    return Series2(a.m_order, std::move(terms));
}

// ---------------------------------------------------------------------------
// Comparison

Comparison compare(const Series2 &lhs, const Series2 &rhs)
{
    Comparison out;
    out.verified_order = std::min(lhs.order(), rhs.order());
    auto il = lhs.terms().begin();
    auto ir = rhs.terms().begin();
    const GradedOrder less;
    const auto in_range = [&](auto it, const Series2 &s) {
        return it != s.terms().end() && it->first.degree() <= out.verified_order;
    };
    while (in_range(il, lhs) || in_range(ir, rhs)) {
        Exponent e{};
        Rational cl;
        Rational cr;
        if (!in_range(ir, rhs) || (in_range(il, lhs) && less(il->first, ir->first))) {
            e = il->first;
            cl = il->second;
            ++il;
        } else if (!in_range(il, lhs) || less(ir->first, il->first)) {
            e = ir->first;
            cr = ir->second;
            ++ir;
        } else {
            e = il->first;
            cl = il->second;
            cr = ir->second;
            ++il;
            ++ir;
        }
        if (cl != cr) {
            out.holds = false;
            out.first_violation = Mismatch{e, cl, cr};
            return out;
        }
    }
    return out;
}

Comparison compare(const Series1 &lhs, const Series1 &rhs)
{
    Comparison out;
    out.verified_order = std::min(lhs.order(), rhs.order());
    for (int k = 0; k <= out.verified_order; ++k) {
        const auto cl = lhs.coeff(k);
        const auto cr = rhs.coeff(k);
        if (cl != cr) {
            out.holds = false;
            out.first_violation = Mismatch{Exponent{k, 0}, cl, cr};
            return out;
        }
    }
    return out;
}

bool agree(const Series2 &lhs, const Series2 &rhs)
{
    return compare(lhs, rhs).holds;
}

bool agree(const Series1 &lhs, const Series1 &rhs)
{
    return compare(lhs, rhs).holds;
}

// ---------------------------------------------------------------------------
// Substitutions and products with special factors

Series2 linear_substitute(const Series2 &f, const Matrix2 &m)
{
    const int order = f.order();
    if (order < 0 || f.is_zero()) {
        return Series2(order);
    }
    const auto pu = linear_powers(m.a, m.c, order);
    const auto pv = linear_powers(m.b, m.d, order);
    std::vector<Homogeneous> acc(static_cast<std::size_t>(order + 1));
    for (int d = 0; d <= order; ++d) {
        acc[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(d + 1));
    }
    for (const auto &[e, c] : f.terms()) {
        const auto prod = hmul(pu[static_cast<std::size_t>(e.x)], pv[static_cast<std::size_t>(e.y)]);
        auto &dst = acc[static_cast<std::size_t>(e.degree())];
        for (std::size_t k = 0; k < prod.size(); ++k) {
            if (sgn(prod[k]) != 0) {
                dst[k] += c * prod[k];
            }
        }
    }
    Series2::Terms terms;
    for (int d = 0; d <= order; ++d) {
        for (int k = 0; k <= d; ++k) {
            auto &c = acc[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            if (sgn(c) != 0) {
                terms.emplace_hint(terms.end(), Exponent{d - k, k}, std::move(c));
            }
        }
    }
    return Series2(order, std::move(terms));
}

Series2 scale_arguments(const Series2 &f, const Rational &m)
{
    Series2::Terms terms;
    for (const auto &[e, c] : f.terms()) {
        terms.emplace_hint(terms.end(), e, c * pow(m, static_cast<unsigned>(e.degree())));
    }
    return Series2(f.order(), std::move(terms));
}

Series2 mul_exp_linear(const Series2 &f, const Rational &alpha, const Rational &beta)
{
    const int order = f.order();
    if (order < 0) {
        return f;
    }
    // exp(alpha x + beta y) = sum alpha^i beta^j x^i y^j / (i! j!)
    std::vector<Rational> ax(static_cast<std::size_t>(order + 1));
    std::vector<Rational> by(static_cast<std::size_t>(order + 1));
    for (int i = 0; i <= order; ++i) {
        ax[static_cast<std::size_t>(i)] = pow(alpha, static_cast<unsigned>(i)) / factorial_rational(static_cast<unsigned>(i));
        by[static_cast<std::size_t>(i)] = pow(beta, static_cast<unsigned>(i)) / factorial_rational(static_cast<unsigned>(i));
    }
    Dense acc(order);
    for (const auto &[e, c] : f.terms()) {
        const int room = order - e.degree();
        for (int i = 0; i <= room; ++i) {
            if (sgn(ax[static_cast<std::size_t>(i)]) == 0) {
                continue;
            }
            const Rational ci = c * ax[static_cast<std::size_t>(i)];
            for (int j = 0; i + j <= room; ++j) {
                if (sgn(by[static_cast<std::size_t>(j)]) != 0) {
                    acc.at(e.x + i, e.y + j) += ci * by[static_cast<std::size_t>(j)];
                }
            }
        }
    }
    return acc.to_series();
}

Series2 mul_linear_form(const Series2 &f, const Rational &a, const Rational &b)
{
    Series2::Terms terms;
    for (const auto &[e, c] : f.terms()) {
        if (sgn(a) != 0) {
            terms[Exponent{e.x + 1, e.y}] += a * c;
        }
        if (sgn(b) != 0) {
            terms[Exponent{e.x, e.y + 1}] += b * c;
        }
    }
    return Series2(f.order() + 1, std::move(terms));
}

Series2 divide(const Series2 &f, const Series2 &g)
{
    const Rational g0 = g.coeff(0, 0);
    if (sgn(g0) == 0) {
        throw Error(ErrorCode::division_by_non_unit, "divisor has zero constant term");
    }
    const int order = std::min(f.order(), g.order());
    if (order < 0) {
        return Series2(order);
    }
    const Dense fd = Dense::from_series(f, order);
    Dense h(order);
    for (int d = 0; d <= order; ++d) {
        for (int q = 0; q <= d; ++q) {
            const int p = d - q;
            Rational r = fd.at(p, q);
            for (const auto &[e, c] : g.terms()) {
                if (e.degree() == 0) {
                    continue;
                }
                if (e.degree() > d) {
                    break;
                }
                if (e.x <= p && e.y <= q) {
                    r -= c * h.at(p - e.x, q - e.y);
                }
            }
            h.at(p, q) = r / g0;
        }
    }
    return h.to_series();
}

Series1 divide(const Series1 &f, const Series1 &g)
{
    const Rational g0 = g.coeff(0);
    if (sgn(g0) == 0) {
        throw Error(ErrorCode::division_by_non_unit, "divisor has zero constant term");
    }
    const int order = std::min(f.order(), g.order());
    std::vector<Rational> h(static_cast<std::size_t>(std::max(order + 1, 0)));
    for (int k = 0; k <= order; ++k) {
        Rational r = f.coeff(k);
        for (const auto &[j, c] : g.terms()) {
            if (j == 0) {
                continue;
            }
            if (j > k) {
                break;
            }
            r -= c * h[static_cast<std::size_t>(k - j)];
        }
        h[static_cast<std::size_t>(k)] = r / g0;
    }
    Series1::Terms terms;
    for (int k = 0; k <= order; ++k) {
        terms.emplace(k, h[static_cast<std::size_t>(k)]);
    }
    return Series1(order, std::move(terms));
}

Series2 divide(const Series2 &f, Variable v)
{
    Series2::Terms terms;
    for (const auto &[e, c] : f.terms()) {
        const int power = v == Variable::x ? e.x : e.y;
        if (power == 0) {
            throw Error(ErrorCode::not_divisible, std::string("term x^") + std::to_string(e.x) + " y^"
                                                      + std::to_string(e.y) + " is not divisible by "
                                                      + (v == Variable::x ? "x" : "y"));
        }
        const Exponent q = v == Variable::x ? Exponent{e.x - 1, e.y} : Exponent{e.x, e.y - 1};
        terms.emplace_hint(terms.end(), q, c);
    }
    return Series2(f.order() - 1, std::move(terms));
}

// ---------------------------------------------------------------------------
// Special series

Rational factorial_rational(unsigned n)
{
    return Rational(factorial(n));
}

std::vector<Rational> bernoulli_numbers(int n_max)
{
    std::vector<Rational> b;
    if (n_max < 0) {
        return b;
    }
    b.reserve(static_cast<std::size_t>(n_max + 1));
    b.emplace_back(1);
    for (int n = 1; n <= n_max; ++n) {
        // sum_{k<=n} C(n+1, k) B_k = 0
        Rational s;
        for (int k = 0; k < n; ++k) {
            s += Rational(binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(k))) * b[static_cast<std::size_t>(k)];
        }
        b.push_back(-s / (n + 1));
    }
    return b;
}

Series1 expm1_over_t(int order)
{
    Series1::Terms terms;
    for (int n = 0; n <= order; ++n) {
        terms.emplace(n, 1 / factorial_rational(static_cast<unsigned>(n + 1)));
    }
    return Series1(order, std::move(terms));
}

Series1 t_over_expm1(int order)
{
    const auto b = bernoulli_numbers(order);
    Series1::Terms terms;
    for (int n = 0; n <= order; ++n) {
        terms.emplace(n, b[static_cast<std::size_t>(n)] / factorial_rational(static_cast<unsigned>(n)));
    }
    return Series1(order, std::move(terms));
}

Series1 exp_t(int order)
{
    Series1::Terms terms;
    for (int n = 0; n <= order; ++n) {
        terms.emplace(n, 1 / factorial_rational(static_cast<unsigned>(n)));
    }
    return Series1(order, std::move(terms));
}

Series2 divided_diff_exp(int order, const Rational &k)
{
    Series2::Terms terms;
    for (int n = 1; n <= order + 1; ++n) {
        const Rational c = pow(k, static_cast<unsigned>(n)) / factorial_rational(static_cast<unsigned>(n));
        for (int j = 0; j <= n - 1; ++j) {
            terms.emplace_hint(terms.end(), Exponent{n - 1 - j, j}, c);
        }
    }
    return Series2(order, std::move(terms));
}

std::variant<Series1, Series2> special_series(SpecialKind kind, int order)
{
    switch (kind) {
        case SpecialKind::expm1_over_t:
            return expm1_over_t(order);
        case SpecialKind::t_over_expm1:
            return t_over_expm1(order);
        case SpecialKind::exp_t:
            return exp_t(order);
        case SpecialKind::divided_diff_exp:
            return divided_diff_exp(order);
    }
    return Series1(order);
}

Series2 compose_univariate(const Series1 &g, const Series2 &inner)
{
    if (sgn(inner.coeff(0, 0)) != 0) {
        throw Error(ErrorCode::constant_term_not_zero, "inner series must vanish at the origin");
    }
    int order = inner.order();
    const auto v = inner.valuation();
    if (v) {
        // g(inner) only sees g up to t^order(g), which fixes degrees < (order(g) + 1) v.
        order = std::min(order, (g.order() + 1) * *v - 1);
    }
    Series2 result = Series2::constant(g.coeff(0), order);
    Series2 power = Series2::constant(Rational(1), order);
    for (int k = 1; k <= g.order(); ++k) {
        if (!v || k * *v > order) {
            break;
        }
        power = power * inner.truncated(order);
        const auto c = g.coeff(k);
        if (sgn(c) != 0) {
            result = result + c * power;
        }
    }
    return result;
}

Series2 homogeneous_part(const Series2 &f, int d)
{
    if (d > f.order()) {
        throw Error(ErrorCode::degree_exceeds_order,
                    "degree " + std::to_string(d) + " exceeds order " + std::to_string(f.order()));
    }
    Series2::Terms terms;
    for (const auto &[e, c] : f.terms()) {
        if (e.degree() == d) {
            terms.emplace(e, c);
        }
    }
    return Series2(f.order(), std::move(terms));
}

} // namespace latval
