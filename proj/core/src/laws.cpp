#include <algorithm>
#include <array>
#include <utility>

#include <latval/error.hpp>
#include <latval/laws.hpp>

#include "linalg.hpp"

namespace latval
{

namespace
{

// f(ux x + uy y, vx x + vy y).
Series2 at(const Series2 &f, int ux, int uy, int vx, int vy)
{
    return linear_substitute(f, Matrix2{Rational(ux), Rational(vx), Rational(uy), Rational(vy)});
}

Series2 linear_form(int a, int b, int order)
{
    return Rational(a) * Series2::x(order) + Rational(b) * Series2::y(order);
}

Series2 times(const Series2 &f, int a, int b)
{
    return mul_linear_form(f, Rational(a), Rational(b));
}

Series2 exp_times(const Series2 &f, int a, int b)
{
    return mul_exp_linear(f, Rational(a), Rational(b));
}

// (e^x - 1)/x as a bivariate series.
Series2 expm1_over_x(int order)
{
    return compose_univariate(expm1_over_t(order), Series2::x(order));
}

Series2 expm1_over_y(int order)
{
    return compose_univariate(expm1_over_t(order), Series2::y(order));
}

constexpr std::array<std::pair<LawId, std::string_view>, 19> law_names{{
    {LawId::A, "A"},
    {LawId::B, "B"},
    {LawId::C, "C"},
    {LawId::f2simple2, "f2simple2"},
    {LawId::f23up, "f23up"},
    {LawId::Aprime, "Aprime"},
    {LawId::Bprime, "Bprime"},
    {LawId::Cprime, "Cprime"},
    {LawId::D, "D"},
    {LawId::E, "E"},
    {LawId::rhoformula, "rhoformula"},
    {LawId::rho_sym1, "rho_sym1"},
    {LawId::rho_sym2, "rho_sym2"},
    {LawId::rho_sym3, "rho_sym3"},
    {LawId::Adoubleprime, "Adoubleprime"},
    {LawId::f1shift, "f1shift"},
    {LawId::f1period, "f1period"},
    {LawId::f1neg, "f1neg"},
    {LawId::f0gl2z, "f0gl2z"},
}};

bool holds(LawId law, const Series2 &f)
{
    return check_law(law, f).holds;
}

} // namespace

Series2 sharp(const Series2 &f)
{
    const int n = f.order();
    const auto bern = t_over_expm1(n);
    const auto bx = compose_univariate(bern, Series2::x(n));
    const auto bxy = compose_univariate(bern, linear_form(1, 1, n));
    const auto bracket = at(f, 1, 0, 1, 1) + exp_times(at(f, 0, 1, 1, 1), 1, 0);
    return bx * bxy * bracket;
}

Series2 dagger(const Series2 &rho)
{
    const int n = rho.order();
    const auto bracket = divided_diff_exp(n) * at(rho, -1, 1, 1, 0) - expm1_over_x(n) * at(rho, 1, 0, -1, 1);
    return divide(bracket, Variable::y);
}

Series2 diamond(const Series2 &rho)
{
    const int n = rho.order();
    const auto bracket = expm1_over_x(n) * at(rho, 1, 0, 0, -1) - expm1_over_y(n) * at(rho, 0, 1, -1, 0);
    return divide_by_x_minus_y(bracket);
}

Series2 divide_by_x_minus_y(const Series2 &f)
{
    const auto sheared = at(f, 1, 1, 0, 1);
    return at(divide(sheared, Variable::x), 1, -1, 0, 1);
}

std::string_view to_string(LawId law)
{
    for (const auto &[id, name] : law_names) {
        if (id == law) {
            return name;
        }
    }
    return "?";
}

std::optional<LawId> parse_law_id(std::string_view name)
{
    for (const auto &[id, n] : law_names) {
        if (n == name) {
            return id;
        }
    }
    return std::nullopt;
}

std::vector<LawId> all_laws()
{
    std::vector<LawId> out;
    for (const auto &entry : law_names) {
        out.push_back(entry.first);
    }
    return out;
}

LawSides law_sides(LawId law, const Series2 &f)
{
    switch (law) {
        case LawId::A:
        case LawId::f23up:
            return {f + exp_times(at(f, -1, 1, 0, 1), 1, 0), at(f, 1, 0, 1, 1) + at(f, 0, 1, 1, 1)};
        case LawId::B:
            return {f, at(f, 0, 1, 1, 0)};
        case LawId::C:
            return {at(f, -1, 1, -1, 0), exp_times(f, -1, 0)};
        case LawId::f2simple2:
            return {f + exp_times(at(f, -1, 0, 0, -1), 1, 1), at(f, 1, 0, 1, 1) + at(f, 1, 1, 0, 1)};
        case LawId::Aprime:
            return {times(at(f, 1, 0, -1, 1), 1, 1), times(f, 0, 1) + times(at(f, 0, 1, 1, 0), 1, 0)};
        case LawId::Bprime:
            return {times(at(f, 1, 0, -1, 1), 1, -1), times(at(f, 0, 1, -1, 0), 1, 0) - times(at(f, 1, 0, 0, -1), 0, 1)};
        case LawId::Cprime:
            return {times(at(f, -1, 0, 1, -1), 1, -1),
                    times(at(f, 0, 1, -1, 0), 1, 0) - times(at(f, 1, 0, 0, -1), 0, 1)};
        case LawId::D:
            return {at(f, -1, 0, 0, -1), f};
        case LawId::E:
            return {at(f, 1, 0, -2, -1), f};
        case LawId::rhoformula:
            return {times(f, 2, 1), times(at(f, 1, 0, 1, 1), 1, 1) + times(at(f, 1, 1, 1, 0), 1, 0)};
        case LawId::rho_sym1:
            return {at(f, 1, 0, -1, 1), at(f, 0, 1, 1, -1)};
        case LawId::rho_sym2:
            return {at(f, 0, 1, -1, 0), at(f, -1, 1, 1, 0)};
        case LawId::rho_sym3:
            return {f, at(f, 1, 1, 0, -1)};
        case LawId::Adoubleprime:
            return {times(at(f, 1, 1, -1, 1), 1, 1), times(at(f, 1, 2, 1, 0), 1, 0) + times(at(f, 2, 1, 0, 1), 0, 1)};
        case LawId::f1shift:
            return {at(f, -1, 0, 0, -1), exp_times(f, -1, 0)};
        case LawId::f1period:
            return {f, at(f, 1, 0, 1, 1)};
        case LawId::f1neg:
            return {f, at(f, 1, 0, 0, -1)};
        case LawId::f0gl2z: {
            const auto gens = gl2z_generators();
            for (const auto &g : gens) {
                auto moved = act_on_series(g, f);
                if (!agree(moved, f)) {
                    return {std::move(moved), f};
                }
            }
            return {act_on_series(gens[0], f), f};
        }
    }
    return {f, f};
}

LawReport check_law(LawId law, const Series2 &f)
{
    LawReport report;
    report.law = law;
    if (law == LawId::f0gl2z) {
        const auto gens = gl2z_generators();
        const auto inv = is_invariant_under(f, gens);
        report.holds = inv.invariant;
        report.verified_order = inv.verified_order;
        report.first_violation = inv.first_violation;
        report.failing_generator = inv.failing_generator;
        return report;
    }
    const auto sides = law_sides(law, f);
    const auto cmp = compare(sides.lhs, sides.rhs);
    report.holds = cmp.holds;
    report.verified_order = cmp.verified_order;
    report.first_violation = cmp.first_violation;
    return report;
}

bool EquivalenceReport::all_confirmed() const noexcept
{
    return std::all_of(implications.begin(), implications.end(), [](const auto &i) { return i.confirmed(); });
}

EquivalenceReport equivalence_suite(const Series2 &f, SeriesRole role)
{
    EquivalenceReport report;
    if (role == SeriesRole::f2) {
        const bool a = holds(LawId::A, f);
        const bool b = holds(LawId::B, f);
        const bool c = holds(LawId::C, f);
        const bool s2 = holds(LawId::f2simple2, f);
        report.implications.push_back({"(C) and (B) imply [(f2simple2) iff (f23up)]", c && b, s2 == a});

        const bool abc = a && b && c;
        bool rho_ok = false;
        bool round_trip = false;
        if (abc) {
            const auto rho = sharp(f);
            rho_ok = holds(LawId::Aprime, rho) && holds(LawId::E, rho);
            try {
                round_trip = agree(dagger(rho), f);
            } catch (const Error &) {
                round_trip = false;
            }
        }
        report.implications.push_back({"(A), (B), (C) imply sharp(f) satisfies (Aprime) and (E)", abc, rho_ok});
        report.implications.push_back({"(A), (B), (C) imply dagger(sharp(f)) = f", abc, round_trip});
        report.implications.push_back({"(A) implies sharp(f) satisfies (Aprime)", a, a && holds(LawId::Aprime, sharp(f))});
        return report;
    }

    const bool ap = holds(LawId::Aprime, f);
    const bool e = holds(LawId::E, f);
    const bool bp = holds(LawId::Bprime, f);
    const bool cp = holds(LawId::Cprime, f);
    const bool d = holds(LawId::D, f);
    const bool sym1 = holds(LawId::rho_sym1, f);
    const bool sym2 = holds(LawId::rho_sym2, f);
    const bool sym3 = holds(LawId::rho_sym3, f);

    report.implications.push_back({"(Aprime) and (E) imply (Bprime), (Cprime), (D)", ap && e, bp && cp && d});
    report.implications.push_back({"(Aprime), (Bprime), (Cprime) imply (E)", ap && bp && cp, e});
    report.implications.push_back({"(Aprime) implies rho_sym1, rho_sym2, rho_sym3", ap, sym1 && sym2 && sym3});
    report.implications.push_back({"(Aprime) and (E) imply D4 invariance", ap && e, is_d4_invariant(f).invariant});
    report.implications.push_back({"(Aprime) iff (Adoubleprime) after the change of variables", true,
                                   ap == holds(LawId::Adoubleprime, to_st(f))});

    bool forward = false;
    bool same = false;
    if (ap && e) {
        try {
            const auto g = dagger(f);
            forward = holds(LawId::A, g) && holds(LawId::B, g) && holds(LawId::C, g);
            same = agree(g, diamond(f));
        } catch (const Error &) {
            forward = false;
        }
    }
    report.implications.push_back({"(Aprime) and (E) imply dagger(rho) satisfies (A), (B), (C)", ap && e, forward});
    report.implications.push_back({"(Aprime) and (E) imply dagger(rho) = diamond(rho)", ap && e, same});
    return report;
}

Series2 to_st(const Series2 &rho)
{
    const Rational half(1, 2);
    return linear_substitute(rho, Matrix2{half, Rational(0), -half, Rational(1)});
}

Series2 from_st(const Series2 &sigma)
{
    return at(sigma, 2, 1, 0, 1);
}

Series2 d4_invariant_p1(int order)
{
    return Series2(order, {{{2, 0}, 2}, {{1, 1}, 2}, {{0, 2}, 1}});
}

Series2 d4_invariant_p2(int order)
{
    return Series2(order, {{{2, 2}, 4}, {{1, 3}, 4}, {{0, 4}, 1}});
}

D4Decomposition d4_decompose(const Series2 &h)
{
    const auto inv = is_d4_invariant(h);
    if (!inv.invariant) {
        throw Error(ErrorCode::not_invariant, "series is not invariant under the dihedral subgroup");
    }
    const int n = h.order();
    const auto p1 = d4_invariant_p1(n);
    const auto p2 = d4_invariant_p2(n);

    // Powers of the invariants, indexed by exponent.
    std::vector<Series2> p1_pow{Series2::constant(1, n)};
    std::vector<Series2> p2_pow{Series2::constant(1, n)};
    while (2 * static_cast<int>(p1_pow.size()) <= n) {
        p1_pow.push_back(p1_pow.back() * p1);
    }
    while (4 * static_cast<int>(p2_pow.size()) <= n) {
        p2_pow.push_back(p2_pow.back() * p2);
    }

    Series2::Terms g_terms;
    for (int deg = 0; deg <= n; ++deg) {
        if (deg % 2 != 0) {
            for (int q = 0; q <= deg; ++q) {
                if (sgn(h.coeff(deg - q, q)) != 0) {
                    throw Error(ErrorCode::no_representation, "odd degree term in an invariant series");
                }
            }
            continue;
        }
        // Unknowns: coefficients of a^i b^j with 2i + 4j = deg.
        std::vector<std::pair<int, int>> unknowns;
        for (int j = 0; 4 * j <= deg; ++j) {
            unknowns.emplace_back((deg - 4 * j) / 2, j);
        }
        detail::RationalMatrix a(static_cast<std::size_t>(deg + 1), std::vector<Rational>(unknowns.size()));
        std::vector<Rational> b(static_cast<std::size_t>(deg + 1));
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            const auto [i, j] = unknowns[k];
            const auto prod = p1_pow[static_cast<std::size_t>(i)] * p2_pow[static_cast<std::size_t>(j)];
            for (int q = 0; q <= deg; ++q) {
                a[static_cast<std::size_t>(q)][k] = prod.coeff(deg - q, q);
            }
        }
        for (int q = 0; q <= deg; ++q) {
            b[static_cast<std::size_t>(q)] = h.coeff(deg - q, q);
        }
        const auto sol = detail::solve_unique(a, b, unknowns.size());
        if (!sol) {
            throw Error(ErrorCode::no_representation, "degree " + std::to_string(deg) + " is not a combination of the invariants");
        }
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            if (sgn((*sol)[k]) != 0) {
                g_terms.emplace(Exponent{unknowns[k].first, unknowns[k].second}, (*sol)[k]);
            }
        }
    }
    return {Series2(n / 2, std::move(g_terms)), n};
}

Series2 d4_recompose(const D4Decomposition &dec)
{
    const int n = dec.weighted_order;
    const auto p1 = d4_invariant_p1(n);
    const auto p2 = d4_invariant_p2(n);
    Series2 out(n);
    for (const auto &[e, c] : dec.g.terms()) {
        if (2 * e.x + 4 * e.y > n) {
            continue;
        }
        Series2 term = Series2::constant(c, n);
        for (int i = 0; i < e.x; ++i) {
            term = term * p1;
        }
        for (int j = 0; j < e.y; ++j) {
            term = term * p2;
        }
        out = out + term;
    }
    return out;
}

} // namespace latval
