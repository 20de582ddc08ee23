#ifndef LATVAL_LAWS_HPP
#define LATVAL_LAWS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <latval/group_action.hpp>
#include <latval/series.hpp>

namespace latval
{

// f# = x/(e^x - 1) (x+y)/(e^(x+y) - 1) [f(x, x+y) + e^x f(y, x+y)].
Series2 sharp(const Series2 &f);

// rho^dagger = [D(x,y) rho(y-x, x) - (e^x - 1)/x rho(x, y-x)] / y with
// D(x,y) = (e^y - e^x)/(y - x). Result order is order(rho) - 1.
// Throws not_divisible when the bracket has a pure x^k term.
Series2 dagger(const Series2 &rho);

// [(e^x - 1)/x rho(x, -y) - (e^y - 1)/y rho(y, -x)] / (x - y).
// Throws not_divisible when the bracket is not antisymmetric.
Series2 diamond(const Series2 &rho);

// F / (x - y), computed as a division by x after the shear x -> x + y.
Series2 divide_by_x_minus_y(const Series2 &f);

enum class LawId {
    A,
    B,
    C,
    f2simple2,
    f23up,
    Aprime,
    Bprime,
    Cprime,
    D,
    E,
    rhoformula,
    rho_sym1,
    rho_sym2,
    rho_sym3,
    Adoubleprime,
    f1shift,
    f1period,
    f1neg,
    f0gl2z,
};

std::string_view to_string(LawId law);
std::optional<LawId> parse_law_id(std::string_view name);
std::vector<LawId> all_laws();

struct LawReport {
    LawId law = LawId::A;
    bool holds = true;
    int verified_order = 0;
    std::optional<Mismatch> first_violation;
    // Set for f0gl2z when one of the generators moves the series.
    std::optional<IntMatrix2> failing_generator;
};

// Both sides of the law, as assembled for the check.
struct LawSides {
    Series2 lhs;
    Series2 rhs;
};

LawSides law_sides(LawId law, const Series2 &f);
LawReport check_law(LawId law, const Series2 &f);

enum class SeriesRole { f2, rho };

struct Implication {
    std::string name;
    bool premise = false;
    bool conclusion = false;

    [[nodiscard]] bool confirmed() const noexcept
    {
        return !premise || conclusion;
    }
};

struct EquivalenceReport {
    std::vector<Implication> implications;

    [[nodiscard]] bool all_confirmed() const noexcept;
};

EquivalenceReport equivalence_suite(const Series2 &f, SeriesRole role);

// sigma(s, t) = rho((s - t)/2, t), i.e. s = 2x + y, t = y.
Series2 to_st(const Series2 &rho);
// rho(x, y) = sigma(2x + y, y).
Series2 from_st(const Series2 &sigma);

// 2x^2 + 2xy + y^2 and 4x^2y^2 + 4xy^3 + y^4.
Series2 d4_invariant_p1(int order);
Series2 d4_invariant_p2(int order);

// h = g(P1, P2). g is stored as a series in (a, b) = (x, y) of the
// Series2 type; a has weight 2 and b weight 4, and every monomial of
// weighted degree <= weighted_order is known.
struct D4Decomposition {
    Series2 g;
    int weighted_order = 0;
};

// Throws not_invariant, no_representation.
D4Decomposition d4_decompose(const Series2 &h);
Series2 d4_recompose(const D4Decomposition &dec);

} // namespace latval

#endif
