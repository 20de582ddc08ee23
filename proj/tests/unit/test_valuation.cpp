#include <doctest.h>

#include <latval/error.hpp>
#include <latval/group_action.hpp>
#include <latval/laplace.hpp>
#include <latval/valuation.hpp>
#include <latval/vspace.hpp>

#include "../support/generators.hpp"

using namespace latval;

namespace
{

constexpr int kOrder = 8;

ValuationSpec laplace_spec(int n = kOrder)
{
    return ValuationSpec(0, Series1(n / 2), Series2::constant(1, n), n);
}

ValuationSpec cosh_spec(const Rational &kappa, int n = kOrder)
{
    return ValuationSpec(1, cosh_series(n / 2), Series2::constant(kappa, n), n);
}

ValuationSpec odd_spec(int delta, int n = kOrder)
{
    return ValuationSpec(0, odd_basis(delta, n / 2), Series2(n), n);
}

ValuationSpec basis_spec(int d, int n = kOrder)
{
    return ValuationSpec(0, Series1(n / 2), with_order(vd_basis(d).basis.at(0), n), n);
}

ValuationSpec mixed_spec(int n = kOrder)
{
    const auto g = cosh_series(n / 2) + Rational(3) * odd_basis(1, n / 2);
    const auto rho = Series2::constant(Rational(-1, 2), n) + Rational(5) * with_order(vd_basis(4).basis.at(0), n);
    return ValuationSpec(2, g, rho, n);
}

std::vector<ValuationSpec> spec_corpus()
{
    return {laplace_spec(), basis_spec(4), basis_spec(6), odd_spec(1), cosh_spec(-1), mixed_spec()};
}

std::vector<LatticePolygon> polygon_corpus()
{
    const auto t = standard_triangle();
    return {t,
            dilate(t, 2),
            dilate(t, 3),
            unit_square(),
            hull_normalize({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
            hull_normalize({{0, 0}, {3, 0}, {2, 1}, {0, 1}}),
            hull_normalize({{0, 0}, {3, 0}, {1, 2}, {0, 2}}),
            hull_normalize({{-1, 0}, {2, -1}, {1, 2}})};
}

Series2 exp_series(long a, long b, int n)
{
    return mul_exp_linear(Series2::constant(1, n), Rational(a), Rational(b));
}

} // namespace

TEST_CASE("spec validation")
{
    CHECK_THROWS_WITH_AS(ValuationSpec(0, Series1(4), Series2::x(8), 8), doctest::Contains("InvalidRho"), Error);
    CHECK_THROWS_AS(ValuationSpec(0, Series1(4), d4_invariant_p1(8), 8), Error);
    CHECK_NOTHROW(mixed_spec());
}

TEST_CASE("triangle data")
{
    const auto d = build_triangle_data(ValuationSpec(1, cosh_series(4), Series2(8), 8));
    const auto expected_f1 = Rational(1, 2) * (exp_series(1, 0, 8) + Series2::constant(1, 8));
    CHECK(agree(d.f1, expected_f1));
    CHECK(d.zT.coeff(0, 0) == Rational(3, 2));
    CHECK(d.effective_order == 7);

    const auto lap = build_triangle_data(laplace_spec());
    CHECK(agree(lap.zT, laplace_plus(standard_triangle(), 7)));

    CHECK(build_triangle_data(ValuationSpec(0, Series1(4), Series2(8), 8)).zT.is_zero());
}

TEST_CASE("points and segments")
{
    const auto spec = cosh_spec(0);
    CHECK(agree(z_point(spec, {0, 0}), Series2::constant(1, 7)));
    CHECK(agree(z_point(spec, {1, 0}), exp_series(1, 0, 7)));
    CHECK(z_point(laplace_spec(), {2, 3}).is_zero());

    const auto d = build_triangle_data(spec);
    CHECK(agree(z_segment(spec, hull_normalize({{0, 0}, {1, 0}})), d.f1));

    const auto s2 = z_segment(spec, hull_normalize({{0, 0}, {2, 0}}));
    CHECK(agree(s2, Rational(1, 2) * (exp_series(2, 0, 7) + Series2::constant(1, 7))));
    CHECK(s2.coeff(0, 0) == 1);

    // x (e^(2x) - 1)/2 for the delta = 1 member of the odd family.
    const auto odd = z_segment(odd_spec(1), hull_normalize({{0, 0}, {2, 0}}));
    const auto expected = mul_linear_form(Rational(1, 2) * (exp_series(2, 0, 7) - Series2::constant(1, 7)), 1, 0);
    CHECK(agree(odd, expected));

    CHECK_THROWS_WITH_AS(z_segment(spec, standard_triangle()), doctest::Contains("NotSegment"), Error);
}

TEST_CASE("polygons by shelling")
{
    const auto spec = cosh_spec(0);
    const auto d = build_triangle_data(spec);
    CHECK(agree(z_polygon(spec, standard_triangle()), d.zT));

    // square = T u (-T + (1,1)), meeting in the diagonal from e1 to e2.
    const auto t_ref = act_on_series(AffineUnimodular(IntMatrix2{-1, 0, 0, -1}, {1, 1}), d.zT);
    const auto diag = z_segment(spec, hull_normalize({{1, 0}, {0, 1}}));
    const auto square = z_polygon(spec, unit_square());
    CHECK(agree(square, d.zT + t_ref - diag));
    CHECK(square.coeff(0, 0) == 2);

    CHECK(z_polygon(spec, dilate(standard_triangle(), 2)).coeff(0, 0) == 3);
}

TEST_CASE("property: valuation axiom")
{
    std::size_t pairs = 0;
    for (const auto &spec : spec_corpus()) {
        const auto data = build_triangle_data(spec);
        for (const auto &p : polygon_corpus()) {
            if (lattice_points(p).size() == 3) {
                continue;
            }
            const auto whole = z_polygon(spec, data, p);
            for (const auto &s : split_pairs(p, 6)) {
                const auto lhs = whole + z_polygon(spec, data, s.chord);
                const auto rhs = z_polygon(spec, data, s.first) + z_polygon(spec, data, s.second);
                CHECK(agree(lhs, rhs));
                ++pairs;
            }
        }
    }
    CHECK(pairs >= 40);
}

TEST_CASE("property: equivariance and triangulation independence")
{
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<std::int64_t> e(-3, 3);
    for (const auto &spec : spec_corpus()) {
        const auto data = build_triangle_data(spec);
        for (int trial = 0; trial < 5; ++trial) {
            IntMatrix2 m;
            do {
                m = {e(rng), e(rng), e(rng), e(rng)};
            } while (std::abs(m.det()) != 1);
            const AffineUnimodular g(m, {e(rng), e(rng)});
            const auto p = testing::random_polygon(rng, 2, 5);
            const auto zp = z_polygon(spec, data, p);
            CHECK(agree(z_polygon(spec, data, act_on_polygon(g, p)), act_on_series(g, zp)));
            CHECK(agree(z_polygon(spec, data, p, rng()), zp));
        }
    }
}

TEST_CASE("simple specs")
{
    for (const auto &spec : {laplace_spec(), basis_spec(4), basis_spec(6)}) {
        CHECK(z_point(spec, {1, 2}).is_zero());
        CHECK(z_segment(spec, hull_normalize({{0, 0}, {3, 1}})).is_zero());
        for (int m = 1; m <= 4; ++m) {
            CHECK(agree(z_mT_closed(spec, m), z_polygon(spec, dilate(standard_triangle(), m))));
        }
    }
    CHECK(z_mT_closed(laplace_spec(), 2).coeff(0, 0) == 2);
    CHECK_THROWS_WITH_AS(z_mT_closed(cosh_spec(-1), 2), doctest::Contains("NotSimpleSpec"), Error);
}

TEST_CASE("lattice point sums")
{
    CHECK(agree(g_m_direct(0, 6), Series2::constant(1, 6)));
    CHECK(agree(g_m_closed(0, 6), Series2::constant(1, 6)));
    CHECK(g_m_direct(1, 6).coeff(0, 0) == 3);
    for (int m = 0; m <= 6; ++m) {
        const auto closed = g_m_closed(m, 8);
        CHECK(closed.order() == 8);
        CHECK(agree(closed, g_m_direct(m, 8)));
        CHECK(closed.coeff(0, 0) == (m + 1) * (m + 2) / 2);
    }
}

TEST_CASE("dilativity of the homogeneous simple pieces")
{
    const std::vector<int> ms{2, 3};
    const std::vector<LatticePolygon> ps{standard_triangle(), unit_square()};
    for (const int d : {0, 4, 6, 8}) {
        CAPTURE(d);
        const auto spec = basis_spec(d);
        CHECK(check_dilative(spec, d - 2, ms, ps).holds);
        CHECK_FALSE(check_dilative(spec, d - 1, ms, ps).holds);
    }
}

TEST_CASE("odd family")
{
    const std::vector<int> ms{2, 3};
    const std::vector<LatticePolygon> ps{hull_normalize({{0, 0}, {1, 0}}), hull_normalize({{0, 0}, {1, 2}}),
                                         standard_triangle(), unit_square()};
    for (const int delta : {-1, 1, 3}) {
        CAPTURE(delta);
        const auto spec = odd_spec(delta);
        CHECK(check_dilative(spec, delta, ms, ps).holds);
        for (const auto &p : polygon_corpus()) {
            CHECK(surface_formula_check(spec, p).holds);
        }
    }
    const auto b1 = odd_basis(1, 4);
    CHECK(b1.coeff(0) == 0);
    CHECK(b1.coeff(1) == Rational(1, 2));
    CHECK(b1.coeff(2) == Rational(1, 48));
}

TEST_CASE("edge formula does not hold for even pieces")
{
    const auto lap = surface_formula_check(laplace_spec(), unit_square());
    CHECK_FALSE(lap.holds);
    CHECK(lap.edge_half_sum.is_zero());

    const auto c = surface_formula_check(cosh_spec(0), dilate(standard_triangle(), 2));
    CHECK_FALSE(c.holds);
    REQUIRE(c.comparison.first_violation);
    CHECK(c.comparison.first_violation->exponent == Exponent{0, 0});
    CHECK(c.comparison.first_violation->lhs == 3);
    CHECK(c.comparison.first_violation->rhs == Rational(3, 2));
}

TEST_CASE("recovering g from f1")
{
    const auto f1 = Rational(1, 2) * (exp_series(1, 0, 10) + Series2::constant(1, 10));
    const auto g = extract_g(f1);
    CHECK(g.coeff(0) == 1);
    CHECK(g.coeff(1) == Rational(1, 8));
    CHECK(g.coeff(2) == Rational(1, 384));
    CHECK(agree(g, cosh_series(5)));

    const auto odd = mul_linear_form(Rational(1, 2) * (exp_series(1, 0, 10) - Series2::constant(1, 10)), 1, 0);
    const auto go = extract_g(odd);
    CHECK(go.coeff(1) == Rational(1, 2));
    CHECK(go.coeff(2) == Rational(1, 48));

    CHECK_THROWS_WITH_AS(extract_g(exp_series(1, 0, 8)), doctest::Contains("f1shift"), Error);

    const auto spec = mixed_spec(10);
    CHECK(agree(extract_g(build_triangle_data(spec).f1), spec.g()));
}

TEST_CASE("the constant candidates for the zero-dilative generator")
{
    const auto report = calibrate_val0_report(7);
    REQUIRE(report.candidates.size() == 2);
    const auto &zero = report.candidates[0];
    CHECK(zero.kappa == 0);
    CHECK_FALSE(zero.report.holds);
    const auto &first = zero.report.cases.at(*zero.report.first_failure);
    CHECK(first.m == 2);
    CHECK(first.comparison.first_violation->exponent == Exponent{0, 0});
    CHECK(first.comparison.first_violation->lhs == 3);
    CHECK(first.comparison.first_violation->rhs == Rational(3, 2));

    // kappa = -1 fixes the constant term but not the cubic one.
    const auto &minus = report.candidates[1];
    CHECK(minus.kappa == -1);
    CHECK_FALSE(minus.report.holds);
    const auto &mc = minus.report.cases.at(*minus.report.first_failure);
    CHECK(mc.comparison.first_violation->exponent == Exponent{3, 0});
    CHECK(mc.comparison.first_violation->lhs == Rational(17, 30));
    CHECK(mc.comparison.first_violation->rhs == Rational(3, 5));
    CHECK_FALSE(report.kappa);
    CHECK_THROWS_WITH_AS(calibrate_val0(7), doctest::Contains("NoCandidatePasses"), Error);

    // Both agree with 0-dilativity through degree 2 when kappa = -1.
    CHECK(build_triangle_data(cosh_spec(-1)).zT.coeff(0, 0) == 1);
}

TEST_CASE("fitted zero-dilative generator")
{
    const auto fit = solve_val0_rho(kOrder);
    CHECK(fit.admissible);
    CHECK(fit.dilative);
    CHECK(fit.rho.coeff(0, 0) == -1);
    const auto v4 = vd_basis(4).basis.at(0);
    CHECK(agree(homogeneous_part(fit.rho, 4), with_order(Rational(-1, 240) * v4, kOrder)));

    // Cases beyond the ones used for the fit.
    const auto spec = ValuationSpec(1, cosh_series(kOrder / 2), fit.rho, kOrder);
    const std::vector<int> ms{2, 3, 4};
    const auto more = polygon_corpus();
    CHECK(check_dilative(spec, 0, ms, more).holds);
    const std::vector<LatticePolygon> segs{hull_normalize({{0, 0}, {1, 0}}), hull_normalize({{1, 1}, {3, 2}})};
    CHECK(check_dilative(spec, 0, ms, segs).holds);
}

TEST_CASE("dilative decomposition")
{
    const auto v4 = with_order(vd_basis(4).basis.at(0), kOrder);
    const auto simple = ValuationSpec(0, Series1(kOrder / 2), v4, kOrder);
    const auto parts = dilative_decompose(simple, 20, Series2::constant(-1, kOrder));
    CHECK(parts.alpha0 == 0);
    CHECK(parts.odd.empty());
    REQUIRE(parts.even_simple.size() == 1);
    CHECK(parts.even_simple.begin()->first == 2);

    const auto cosh = ValuationSpec(1, cosh_series(kOrder / 2), Series2(kOrder), kOrder);
    const auto cp = dilative_decompose(cosh, 20, Series2::constant(-1, kOrder));
    CHECK(cp.alpha0 == 1);
    CHECK(cp.kappa == -1);
    REQUIRE(cp.even_simple.size() == 1);
    CHECK(cp.even_simple.begin()->first == -2);
    CHECK(agree(cp.even_simple.begin()->second, Series2::constant(1, kOrder)));

    const auto odd = dilative_decompose(odd_spec(1), 20, Series2::constant(-1, kOrder));
    REQUIRE(odd.odd.size() == 1);
    CHECK(odd.odd.begin()->first == 1);
    CHECK(odd.odd.begin()->second == 1);

    const auto fit = solve_val0_rho(kOrder).rho;
    for (const auto &spec : spec_corpus()) {
        for (const auto &val0 : {Series2::constant(-1, kOrder), Series2(kOrder), fit}) {
            const auto p = dilative_decompose(spec, 20, val0);
            const auto back = reassemble(p);
            CHECK(back.c() == spec.c());
            CHECK(agree(back.g(), spec.g()));
            CHECK(agree(back.rho(), spec.rho()));
        }
        const auto p = dilative_decompose(spec, 20, fit);
        const std::vector<int> ms{2};
        const std::vector<LatticePolygon> ps{standard_triangle()};
        for (const auto &[delta, part] : p.even_simple) {
            const ValuationSpec piece(0, Series1(kOrder / 2), part, kOrder);
            CHECK(check_dilative(piece, delta, ms, ps).holds);
        }
    }
    // Components above the cap stay in the remainder.
    const auto capped = dilative_decompose(mixed_spec(), 0, Series2::constant(-1, kOrder));
    CHECK_FALSE(capped.remainder_rho.is_zero());
    CHECK(agree(reassemble(capped).rho(), mixed_spec().rho()));
}

TEST_CASE("closed form of the 2T defect for the cosh family")
{
    // For (1, cosh_series, kappa): Z(2T)(u) - Z(T)(2u) = (e^x + e^y + e^(x+y))/2 + 3 kappa L(2x, 2y)
    // with L(x, y) = sum x^p y^q/(p+q+2)!.
    const int n = 10;
    Series2::Terms lt;
    for (int d = 0; d < n; ++d) {
        for (int q = 0; q <= d; ++q) {
            lt.emplace(Exponent{d - q, q}, Rational(1) / factorial_rational(static_cast<unsigned>(d + 2)));
        }
    }
    const Series2 l2 = scale_arguments(Series2(n - 1, lt), Rational(2));
    const auto exps = Rational(1, 2) * (exp_series(1, 0, n - 1) + exp_series(0, 1, n - 1) + exp_series(1, 1, n - 1));
    for (const long kappa : {0L, -1L, 2L}) {
        CAPTURE(kappa);
        const auto spec = cosh_spec(Rational(kappa), n);
        const auto zt = build_triangle_data(spec).zT;
        const auto defect = z_polygon(spec, dilate(standard_triangle(), 2)) - scale_arguments(zt, Rational(2));
        CHECK(agree(defect, exps + Rational(3 * kappa) * l2));
    }
    // At kappa = -1 the cubic coefficient is 1/6 - 1/5.
    const auto c = z_polygon(cosh_spec(-1, n), dilate(standard_triangle(), 2))
                   - scale_arguments(build_triangle_data(cosh_spec(-1, n)).zT, Rational(2));
    CHECK(c.coeff(0, 0) == 0);
    CHECK(c.coeff(3, 0) == Rational(-1, 30));
}
