#include <algorithm>
#include <cstdlib>
#include <string>

#include <latval/error.hpp>
#include <latval/group_action.hpp>
#include <latval/valuation.hpp>

namespace latval
{

namespace
{

Rational half()
{
    return Rational(1, 2);
}

Rational int_power(std::int64_t base, int exp)
{
    const Rational p = pow(Rational(static_cast<long>(base)), static_cast<unsigned>(std::abs(exp)));
    return exp >= 0 ? p : Rational(1) / p;
}

Series2 exp_linear(std::int64_t a, std::int64_t b, int order)
{
    return mul_exp_linear(Series2::constant(1, order), Rational(static_cast<long>(a)), Rational(static_cast<long>(b)));
}

std::string exponent_text(const std::optional<Mismatch> &m)
{
    if (!m) {
        return "";
    }
    return " at x^" + std::to_string(m->exponent.x) + " y^" + std::to_string(m->exponent.y);
}

void append(DilativeReport &into, const DilativeReport &from)
{
    for (const auto &c : from.cases) {
        if (!c.comparison.holds && !into.first_failure) {
            into.first_failure = into.cases.size();
        }
        into.cases.push_back(c);
    }
    into.verified_order = std::min(into.verified_order, from.verified_order);
    into.holds = into.holds && from.holds;
}

// 0-dilativity on T (m = 2, 3) and on the unit square (m = 2).
DilativeReport val0_checks(const ValuationSpec &spec)
{
    const std::vector<LatticePolygon> tri{standard_triangle()};
    const std::vector<LatticePolygon> sq{unit_square()};
    const std::vector<int> m23{2, 3};
    const std::vector<int> m2{2};
    auto report = check_dilative(spec, 0, m23, tri);
    append(report, check_dilative(spec, 0, m2, sq));
    return report;
}

} // namespace

ValuationSpec::ValuationSpec(Rational c, Series1 g, Series2 rho, int order)
{
    *this = unchecked(std::move(c), std::move(g), std::move(rho), order);
    if (const auto bad = rho_violation(m_rho)) {
        throw Error(ErrorCode::invalid_rho,
                    "rho violates (" + std::string(to_string(bad->law)) + ")" + exponent_text(bad->first_violation));
    }
}

ValuationSpec ValuationSpec::unchecked(Rational c, Series1 g, Series2 rho, int order)
{
    ValuationSpec s;
    s.m_c = std::move(c);
    s.m_g = g.truncated(order / 2);
    s.m_rho = rho.truncated(order);
    s.m_order = order;
    return s;
}

std::optional<LawReport> rho_violation(const Series2 &rho)
{
    auto r = check_law(LawId::rhoformula, rho);
    if (!r.holds) {
        return r;
    }
    const auto inv = is_d4_invariant(rho);
    if (!inv.invariant) {
        LawReport report;
        report.law = LawId::E;
        report.holds = false;
        report.verified_order = inv.verified_order;
        report.first_violation = inv.first_violation;
        report.failing_generator = inv.failing_generator;
        return report;
    }
    return std::nullopt;
}

Series1 cosh_series(int order)
{
    Series1::Terms t;
    for (int k = 0; k <= order; ++k) {
        t.emplace(k, Rational(1) / (int_power(4, k) * factorial_rational(static_cast<unsigned>(2 * k))));
    }
    return Series1(order, std::move(t));
}

Series1 odd_basis(int delta, int order)
{
    if (delta < -1 || delta % 2 == 0) {
        throw Error(ErrorCode::malformed_input, "odd basis needs an odd delta >= -1");
    }
    const int lowest = (delta + 1) / 2;
    Series1::Terms t;
    for (int k = 0; lowest + k <= order; ++k) {
        t.emplace(lowest + k, Rational(1) / (2 * int_power(4, k) * factorial_rational(static_cast<unsigned>(2 * k + 1))));
    }
    return Series1(order, std::move(t));
}

TriangleData build_triangle_data(const ValuationSpec &spec)
{
    const int n = spec.order();
    TriangleData d;
    d.f0 = Series2::constant(spec.c(), n);
    d.f1 = mul_exp_linear(compose_univariate(spec.g(), Series2::monomial(1, 2, 0, n)), half(), 0);
    d.f2 = dagger(spec.rho());
    const auto f1_rot = linear_substitute(d.f1, Matrix2{0, -1, 1, 0});
    const auto f1_hyp = mul_exp_linear(linear_substitute(d.f1, Matrix2{-1, -1, 1, 0}), 1, 0);
    d.zT = d.f2 + half() * (d.f1 + f1_rot + f1_hyp);
    d.effective_order = d.zT.order();
    return d;
}

Series2 z_point(const ValuationSpec &spec, Point p)
{
    return spec.c() * exp_linear(p.x, p.y, spec.effective_order());
}

Series2 z_segment(const ValuationSpec &spec, const TriangleData &data, const LatticePolygon &seg)
{
    if (seg.dim() != 1) {
        throw Error(ErrorCode::not_segment, "polygon of dimension " + std::to_string(seg.dim()) + " is not a segment");
    }
    const int n = spec.order();
    const Point a = seg.vertices()[0];
    const Point b = seg.vertices()[1];
    const auto len = lattice_length(a, b);
    const Point w{(b.x - a.x) / len, (b.y - a.y) / len};

    Series2 steps(n);
    for (std::int64_t k = 0; k < len; ++k) {
        steps = steps + exp_linear(k, 0, n);
    }
    const auto inner = steps - exp_linear(0, 0, n);
    const auto base = steps * data.f1 - spec.c() * inner;
    const AffineUnimodular frame(complete_primitive(w).matrix(), a);
    return act_on_series(frame, base).truncated(spec.effective_order());
}

Series2 z_segment(const ValuationSpec &spec, const LatticePolygon &seg)
{
    return z_segment(spec, build_triangle_data(spec), seg);
}

Series2 z_polygon(const ValuationSpec &spec, const TriangleData &data, const LatticePolygon &p,
                  std::optional<std::uint64_t> seed)
{
    const int n = spec.effective_order();
    switch (p.dim()) {
        case 0:
            return z_point(spec, p.vertices()[0]);
        case 1:
            return z_segment(spec, data, p);
        default:
            break;
    }
    const auto tri = unimodular_triangulation(p, seed);
    Series2 total(n);
    for (const auto &t : tri.triangles) {
        const auto frame = triangle_frame(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]);
        total = total + act_on_series(frame, data.zT);
    }
    for (const auto &e : tri.edges) {
        if (e.interior) {
            total = total - z_segment(spec, data, hull_normalize({tri.points[e.a], tri.points[e.b]}));
        }
    }
    for (const auto v : tri.interior_vertices) {
        total = total + z_point(spec, tri.points[v]);
    }
    return total.truncated(n);
}

Series2 z_polygon(const ValuationSpec &spec, const LatticePolygon &p, std::optional<std::uint64_t> seed)
{
    return z_polygon(spec, build_triangle_data(spec), p, seed);
}

Series2 g_m_direct(int m, int order)
{
    Series2 sum(order);
    for (int s = 0; s <= m; ++s) {
        for (int t = 0; s + t <= m; ++t) {
            sum = sum + exp_linear(s, t, order);
        }
    }
    return sum;
}

Series2 g_m_closed(int m, int order)
{
    // The bracket is divisible by xy; two monomial divisions cost two orders.
    const int n = order + 2;
    const auto d = [n](int k) { return divided_diff_exp(n, Rational(k)); };
    const auto bracket = exp_linear(1, 1, n) * d(m + 1) - d(m + 2) + d(1);
    const auto numerator = divide(divide(bracket, Variable::x), Variable::y);
    const auto e = expm1_over_t(order);
    const auto denominator = divided_diff_exp(order) * compose_univariate(e, Series2::x(order))
                             * compose_univariate(e, Series2::y(order));
    return divide(numerator, denominator);
}

Series2 z_mT_closed(const ValuationSpec &spec, int m)
{
    if (!spec.is_simple()) {
        throw Error(ErrorCode::not_simple_spec, "the closed form for mT needs c = 0 and g = 0");
    }
    if (m < 1) {
        throw Error(ErrorCode::malformed_input, "dilation factor must be positive");
    }
    const auto f = build_triangle_data(spec).zT;
    const int n = f.order();
    auto out = g_m_closed(m - 1, n) * f;
    if (m >= 2) {
        const auto reflected = linear_substitute(f, Matrix2{-1, 0, 0, -1});
        out = out + mul_exp_linear(g_m_closed(m - 2, n) * reflected, 1, 1);
    }
    return out;
}

DilativeReport check_dilative(const ValuationSpec &spec, int delta, std::span<const int> ms,
                              std::span<const LatticePolygon> polygons)
{
    const auto data = build_triangle_data(spec);
    DilativeReport report;
    report.verified_order = spec.effective_order();
    for (const auto &p : polygons) {
        const auto base = z_polygon(spec, data, p);
        for (const int m : ms) {
            const auto lhs = z_polygon(spec, data, dilate(p, m));
            const auto rhs = int_power(m, -delta) * scale_arguments(base, Rational(m));
            DilativeCase c{m, p, compare(lhs, rhs)};
            report.verified_order = std::min(report.verified_order, c.comparison.verified_order);
            if (!c.comparison.holds) {
                report.holds = false;
                if (!report.first_failure) {
                    report.first_failure = report.cases.size();
                }
            }
            report.cases.push_back(std::move(c));
        }
    }
    return report;
}

CalibrationReport calibrate_val0_report(int order)
{
    const int n = order + 1;
    CalibrationReport out;
    for (const long k : {0L, -1L}) {
        const ValuationSpec spec(Rational(1), cosh_series(n / 2), Series2::constant(Rational(k), n), n);
        out.candidates.push_back({Rational(k), val0_checks(spec)});
    }
    int passing = 0;
    for (const auto &c : out.candidates) {
        if (c.report.holds) {
            ++passing;
            out.kappa = c.kappa;
        }
    }
    if (passing != 1) {
        out.kappa.reset();
    }
    return out;
}

Rational calibrate_val0(int order)
{
    const auto r = calibrate_val0_report(order);
    if (r.kappa) {
        return *r.kappa;
    }
    const bool any = std::any_of(r.candidates.begin(), r.candidates.end(), [](const auto &c) { return c.report.holds; });
    if (any) {
        throw Error(ErrorCode::both_pass, "kappa = 0 and kappa = -1 are both 0-dilative up to order " + std::to_string(order));
    }
    std::string detail;
    for (const auto &c : r.candidates) {
        const auto &rep = c.report;
        if (rep.first_failure) {
            const auto &fc = rep.cases[*rep.first_failure];
            detail += "; kappa = " + to_string(c.kappa) + " fails for m = " + std::to_string(fc.m)
                      + exponent_text(fc.comparison.first_violation);
        }
    }
    throw Error(ErrorCode::no_candidate_passes, "neither kappa = 0 nor kappa = -1 is 0-dilative" + detail);
}

Val0Fit solve_val0_rho(int order)
{
    const int n = order;
    const ValuationSpec base(Rational(1), cosh_series((n + 1) / 2), Series2(n + 1), n + 1);
    const auto data = build_triangle_data(base);
    const auto two_t = dilate(standard_triangle(), 2);
    // R(u) = Z(T)(2u) - Z(2T)(u) for the rho = 0 part.
    const auto defect = scale_arguments(data.zT, Rational(2)) - z_polygon(base, data, two_t);
    const auto f = sharp(scale_arguments(defect, half()));

    Series2 rho(f.order());
    for (int d = 0; d <= f.order(); ++d) {
        const auto part = homogeneous_part(f, d);
        if (part.is_zero()) {
            continue;
        }
        if (d == 2) {
            throw Error(ErrorCode::no_representation, "the defect has a degree 2 component");
        }
        rho = rho + (Rational(1) / (int_power(2, 2 - d) - 1)) * part;
    }

    Val0Fit fit;
    fit.rho = rho;
    fit.admissible = !rho_violation(rho).has_value();
    const auto spec = ValuationSpec::unchecked(Rational(1), cosh_series(n / 2), rho, n);
    fit.report = val0_checks(spec);
    fit.dilative = fit.report.holds;
    return fit;
}

DilativeComponents dilative_decompose(const ValuationSpec &spec, int delta_max, const Series2 &val0_rho)
{
    DilativeComponents out;
    out.order = spec.order();
    out.alpha0 = spec.c();
    out.val0_rho = val0_rho.truncated(spec.order());
    out.kappa = val0_rho.coeff(0, 0);

    const int gn = spec.g().order();
    auto g = spec.g() - spec.c() * cosh_series(gn);
    for (int j = 0; j <= gn; ++j) {
        const int delta = 2 * j - 1;
        if (delta > delta_max) {
            break;
        }
        const Rational a = 2 * g.coeff(j);
        if (sgn(a) != 0) {
            out.odd.emplace(delta, a);
            g = g - a * odd_basis(delta, gn);
        }
    }
    out.remainder_g = g;

    const auto rho = spec.rho() - spec.c() * out.val0_rho;
    Series2 rest(rho.order());
    for (int d = 0; d <= rho.order(); ++d) {
        const auto part = homogeneous_part(rho, d);
        if (part.is_zero()) {
            continue;
        }
        if (const auto bad = rho_violation(part)) {
            throw Error(ErrorCode::invalid_rho, "degree " + std::to_string(d) + " part violates ("
                                                    + std::string(to_string(bad->law)) + ")");
        }
        if (d - 2 <= delta_max) {
            out.even_simple.emplace(d - 2, part);
        } else {
            rest = rest + part;
        }
    }
    out.remainder_rho = rest;
    return out;
}

ValuationSpec reassemble(const DilativeComponents &parts)
{
    const int n = parts.order;
    auto g = parts.alpha0 * cosh_series(n / 2) + parts.remainder_g;
    for (const auto &[delta, a] : parts.odd) {
        g = g + a * odd_basis(delta, n / 2);
    }
    auto rho = parts.alpha0 * parts.val0_rho + parts.remainder_rho;
    for (const auto &[delta, part] : parts.even_simple) {
        rho = rho + part;
    }
    return ValuationSpec::unchecked(parts.alpha0, g, rho, n);
}

SurfaceReport surface_formula_check(const ValuationSpec &spec, const LatticePolygon &p)
{
    if (p.dim() < 2) {
        throw Error(ErrorCode::not_full_dimensional, "edge formula needs a two-dimensional polygon");
    }
    const auto data = build_triangle_data(spec);
    SurfaceReport r;
    r.polygon_value = z_polygon(spec, data, p);
    Series2 sum(spec.effective_order());
    const auto &v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum = sum + z_segment(spec, data, hull_normalize({v[i], v[(i + 1) % v.size()]}));
    }
    r.edge_half_sum = half() * sum;
    r.comparison = compare(r.polygon_value, r.edge_half_sum);
    r.holds = r.comparison.holds;
    return r;
}

Series1 extract_g(const Series2 &f1)
{
    for (const auto law : {LawId::f1shift, LawId::f1period, LawId::f1neg}) {
        const auto r = check_law(law, f1);
        if (!r.holds) {
            throw Error(ErrorCode::law_violation,
                        "f1 violates (" + std::string(to_string(law)) + ")" + exponent_text(r.first_violation));
        }
    }
    const auto h = mul_exp_linear(f1, -half(), 0);
    Series1::Terms t;
    for (const auto &[e, c] : h.terms()) {
        if (e.y != 0 || e.x % 2 != 0) {
            throw Error(ErrorCode::law_violation, "f1 e^(-x/2) is not an even series in x alone");
        }
        t.emplace(e.x / 2, c);
    }
    return Series1(h.order() / 2, std::move(t));
}

} // namespace latval
