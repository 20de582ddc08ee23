#ifndef LATVAL_SERIES_HPP
#define LATVAL_SERIES_HPP

#include <compare>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <latval/rational.hpp>

namespace latval
{

// Exponent pair of the monomial x^x y^y.
struct Exponent {
    int x = 0;
    int y = 0;

    [[nodiscard]] constexpr int degree() const noexcept
    {
        return x + y;
    }

    friend constexpr bool operator==(Exponent, Exponent) = default;
};

// Graded order: lower total degree first, and inside one degree
// x^d > x^(d-1) y > ... > y^d.
struct GradedOrder {
    constexpr bool operator()(Exponent a, Exponent b) const noexcept
    {
        if (a.degree() != b.degree()) {
            return a.degree() < b.degree();
        }
        return a.x > b.x;
    }
};

// First coefficient at which two series differ, in graded order.
struct Mismatch {
    Exponent exponent;
    Rational lhs;
    Rational rhs;
};

// Outcome of comparing two truncated series. verified_order is the total
// degree up to which the comparison was carried out.
struct Comparison {
    bool holds = true;
    int verified_order = 0;
    std::optional<Mismatch> first_violation;
};

// Truncated univariate power series: coefficients of t^0 .. t^order are exact.
class Series1
{
public:
    using Terms = std::map<int, Rational>;

    explicit Series1(int order = 0);
    Series1(int order, Terms terms);

    static Series1 constant(const Rational &c, int order);

    [[nodiscard]] int order() const noexcept
    {
        return m_order;
    }
    [[nodiscard]] const Terms &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] Rational coeff(int k) const;
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    // Lowest degree with a nonzero coefficient, or nullopt for zero.
    [[nodiscard]] std::optional<int> valuation() const;
    [[nodiscard]] Series1 truncated(int order) const;

    friend Series1 operator+(const Series1 &a, const Series1 &b);
    friend Series1 operator-(const Series1 &a, const Series1 &b);
    friend Series1 operator-(const Series1 &a);
    friend Series1 operator*(const Series1 &a, const Series1 &b);
    friend Series1 operator*(const Rational &s, const Series1 &a);

private:
    void normalize();

    int m_order;
    Terms m_terms;
};

// Truncated bivariate power series in Q[[x,y]]: every coefficient of total
// degree <= order is exact, nothing is known above it. Binary operations
// return the smaller of the two orders.
class Series2
{
public:
    using Terms = std::map<Exponent, Rational, GradedOrder>;

    explicit Series2(int order = 0);
    Series2(int order, Terms terms);

    static Series2 constant(const Rational &c, int order);
    static Series2 monomial(const Rational &c, int px, int py, int order);
    static Series2 x(int order);
    static Series2 y(int order);

    [[nodiscard]] int order() const noexcept
    {
        return m_order;
    }
    [[nodiscard]] const Terms &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] Rational coeff(int px, int py) const;
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    [[nodiscard]] std::optional<int> valuation() const;
    [[nodiscard]] Series2 truncated(int order) const;

    friend Series2 operator+(const Series2 &a, const Series2 &b);
    friend Series2 operator-(const Series2 &a, const Series2 &b);
    friend Series2 operator-(const Series2 &a);
    friend Series2 operator*(const Series2 &a, const Series2 &b);
    friend Series2 operator*(const Rational &s, const Series2 &a);

private:
    void normalize();

    int m_order;
    Terms m_terms;
};

// Compares up to min(order(lhs), order(rhs)).
Comparison compare(const Series2 &lhs, const Series2 &rhs);
Comparison compare(const Series1 &lhs, const Series1 &rhs);

// Exact equality up to the common order.
bool agree(const Series2 &lhs, const Series2 &rhs);
bool agree(const Series1 &lhs, const Series1 &rhs);

// 2x2 rational matrix [[a, b], [c, d]].
struct Matrix2 {
    Rational a, b, c, d;
};

// f(ax + cy, bx + dy) for M = [[a, b], [c, d]]. Order is preserved.
Series2 linear_substitute(const Series2 &f, const Matrix2 &m);

// f(mx, my).
Series2 scale_arguments(const Series2 &f, const Rational &m);

// f * exp(alpha x + beta y), truncated to order(f).
Series2 mul_exp_linear(const Series2 &f, const Rational &alpha, const Rational &beta);

// (a x + b y) * f. The factor is an exact polynomial, so the product is known
// one degree further than f.
Series2 mul_linear_form(const Series2 &f, const Rational &a, const Rational &b);

enum class Variable { x, y };

// f / g for a unit g (nonzero constant term). Throws division_by_non_unit.
Series2 divide(const Series2 &f, const Series2 &g);
Series1 divide(const Series1 &f, const Series1 &g);

// f / x or f / y. Throws not_divisible if a known term lacks the variable.
// The result is exact one degree less far than f.
Series2 divide(const Series2 &f, Variable v);

Rational factorial_rational(unsigned n);

// B_0 .. B_{n_max} with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n_max);

enum class SpecialKind { expm1_over_t, t_over_expm1, exp_t, divided_diff_exp };

Series1 expm1_over_t(int order);  // (e^t - 1)/t = sum t^n/(n+1)!
Series1 t_over_expm1(int order);  // t/(e^t - 1) = sum B_n t^n/n!
Series1 exp_t(int order);

// (e^{ky} - e^{kx})/(y - x) = sum_{n>=1} k^n h_{n-1}(x, y)/n!, built from
// complete homogeneous sums so that no division is involved.
Series2 divided_diff_exp(int order, const Rational &k = Rational(1));

std::variant<Series1, Series2> special_series(SpecialKind kind, int order);

// g(inner); inner must have zero constant term. Exact up to order(inner),
// lowered if g itself is too short to fix the high coefficients.
Series2 compose_univariate(const Series1 &g, const Series2 &inner);

// The degree-d homogeneous component, returned at order(f).
Series2 homogeneous_part(const Series2 &f, int d);

} // namespace latval

#endif
