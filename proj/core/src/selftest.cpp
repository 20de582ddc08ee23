#include <latval/selftest.hpp>

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include <latval/error.hpp>
#include <latval/group_action.hpp>
#include <latval/laplace.hpp>
#include <latval/laws.hpp>
#include <latval/vspace.hpp>

namespace latval::selftest
{

namespace
{

using Rng = std::mt19937_64;

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records the first failure only.
    void fail(const std::string &what)
    {
        if (pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string mismatch_text(const std::optional<Mismatch> &m)
{
    if (!m) {
        return "";
    }
    std::ostringstream s;
    s << " at x^" << m->exponent.x << " y^" << m->exponent.y << " (" << to_string(m->lhs) << " vs "
      << to_string(m->rhs) << ")";
    return s.str();
}

std::string polygon_text(const LatticePolygon &p)
{
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        s << (i ? " " : "") << "(" << p.vertices()[i].x << "," << p.vertices()[i].y << ")";
    }
    s << "]";
    return s.str();
}

LatticePolygon random_hull(Rng &rng, int box, int points)
{
    std::uniform_int_distribution<std::int64_t> coord(-box, box);
    for (;;) {
        std::vector<Point> pts;
        for (int i = 0; i < points; ++i) {
            pts.push_back({coord(rng), coord(rng)});
        }
        auto p = hull_normalize(pts);
        if (p.dim() == 2) {
            return p;
        }
    }
}

AffineUnimodular random_affine(Rng &rng)
{
    std::uniform_int_distribution<std::int64_t> e(-3, 3);
    for (;;) {
        const IntMatrix2 m{e(rng), e(rng), e(rng), e(rng)};
        if (m.det() == 1 || m.det() == -1) {
            return AffineUnimodular(m, {e(rng), e(rng)});
        }
    }
}

Series2 random_series(Rng &rng, int order)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    std::uniform_int_distribution<int> pct(0, 99);
    Series2::Terms terms;
    for (int d = 0; d <= order; ++d) {
        for (int q = 0; q <= d; ++q) {
            if (pct(rng) < 40) {
                Rational c(num(rng), den(rng));
                c.canonicalize();
                if (sgn(c) != 0) {
                    terms.emplace(Exponent{d - q, q}, c);
                }
            }
        }
    }
    return Series2(order, std::move(terms));
}

Series2 even_part(const Series2 &f)
{
    Series2 out(f.order());
    for (int d = 0; d <= f.order(); d += 2) {
        out = out + homogeneous_part(f, d);
    }
    return out;
}

ValuationSpec simple_spec(const Series2 &rho, int n)
{
    return ValuationSpec(0, Series1(n / 2), with_order(rho, n), n);
}

// Criterion 1.
Outcome dimension_table(const Options &)
{
    // Closed form values for even d = 0, 2, ..., 30.
    const int expected[] = {1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2, 3, 3};
    Outcome out;
    const auto rows = dims_table(30);
    for (const auto &r : rows) {
        const int want = r.degree % 2 ? 0 : expected[r.degree / 2];
        if (r.computed != want || r.predicted != want || !r.match) {
            out.fail("d = " + std::to_string(r.degree) + ": computed " + std::to_string(r.computed) + ", predicted "
                     + std::to_string(r.predicted) + ", table " + std::to_string(want));
        }
    }
    if (out.pass) {
        out.detail = "dim V_d matches the closed form for d = 0..30";
    }
    return out;
}

// Criterion 2.
Outcome laplace_cross_oracle(const Options &opts)
{
    Outcome out;
    const int n = opts.order;
    const int eff = n - 1;
    const auto t = laplace_plus(standard_triangle(), eff);
    for (int d = 0; d <= eff; ++d) {
        for (int q = 0; q <= d; ++q) {
            const Rational want = Rational(1) / factorial_rational(static_cast<unsigned>(d + 2));
            if (t.coeff(d - q, q) != want) {
                out.fail("L+(T) coefficient of x^" + std::to_string(d - q) + " y^" + std::to_string(q));
            }
        }
    }
    const ValuationSpec spec(0, Series1(n / 2), Series2::constant(1, n), n);
    const auto data = build_triangle_data(spec);
    const auto corpus = polygon_corpus(opts.seed);
    for (const auto &p : corpus) {
        const auto c = compare(z_polygon(spec, data, p), laplace_plus(p, eff));
        if (!c.holds || c.verified_order != eff) {
            out.fail("polygon " + polygon_text(p) + mismatch_text(c.first_violation));
        }
    }
    if (out.pass) {
        out.detail = std::to_string(corpus.size()) + " polygons agree with the moment oracle to order "
                     + std::to_string(eff);
    }
    return out;
}

// Criterion 3.
Outcome valuation_axiom(const Options &opts)
{
    Outcome out;
    const auto corpus = polygon_corpus(opts.seed);
    std::size_t min_pairs = SIZE_MAX;
    const auto specs = spec_corpus(opts.order);
    for (const auto &[name, spec] : specs) {
        const auto data = build_triangle_data(spec);
        std::size_t pairs = 0;
        for (const auto &p : corpus) {
            if (lattice_points(p).size() <= 3) {
                continue;
            }
            const auto whole = z_polygon(spec, data, p);
            for (const auto &s : split_pairs(p, 8)) {
                const auto c = compare(whole + z_polygon(spec, data, s.chord),
                                       z_polygon(spec, data, s.first) + z_polygon(spec, data, s.second));
                if (!c.holds || c.verified_order != opts.order - 1) {
                    out.fail(name + " on " + polygon_text(p) + " split along " + polygon_text(s.chord)
                             + mismatch_text(c.first_violation));
                }
                ++pairs;
            }
        }
        min_pairs = std::min(min_pairs, pairs);
    }
    if (min_pairs < 40) {
        out.fail("only " + std::to_string(min_pairs) + " split pairs");
    }
    if (out.pass) {
        out.detail = std::to_string(min_pairs) + " split pairs x " + std::to_string(specs.size()) + " specs";
    }
    return out;
}

// Criterion 4.
Outcome equivariance(const Options &opts)
{
    Outcome out;
    Rng rng(opts.seed + 4);
    const auto specs = spec_corpus(opts.order);
    constexpr int trials = 20;
    for (const auto &[name, spec] : specs) {
        const auto data = build_triangle_data(spec);
        for (int i = 0; i < trials; ++i) {
            const auto g = random_affine(rng);
            const auto p = random_hull(rng, 2, 5);
            const auto c = compare(z_polygon(spec, data, act_on_polygon(g, p)), act_on_series(g, z_polygon(spec, data, p)));
            if (!c.holds) {
                out.fail(name + " on " + polygon_text(p) + mismatch_text(c.first_violation));
            }
        }
    }
    if (out.pass) {
        out.detail = std::to_string(trials) + " random maps x " + std::to_string(specs.size()) + " specs";
    }
    return out;
}

// Criterion 5.
Outcome round_trips(const Options &opts)
{
    Outcome out;
    Rng rng(opts.seed + 5);
    constexpr int trials = 50;
    for (int i = 0; i < trials; ++i) {
        const auto f = random_series(rng, 8 + i % 3);
        const auto c = compare(dagger(sharp(f)), f);
        if (!c.holds || c.verified_order != f.order() - 1) {
            out.fail("dagger(sharp(f)) != f for trial " + std::to_string(i) + mismatch_text(c.first_violation));
        }
        const auto rho = even_part(random_series(rng, 8 + i % 3));
        const auto back = compare(sharp(dagger(rho)), rho);
        if (!back.holds) {
            out.fail("sharp(dagger(rho)) != rho for trial " + std::to_string(i) + mismatch_text(back.first_violation));
        }
    }
    if (out.pass) {
        out.detail = std::to_string(trials) + " random series each way, orders 8..10";
    }
    return out;
}

// Criterion 6.
Outcome law_equivalences(const Options &opts)
{
    Outcome out;
    std::vector<Series2> rhos{Series2::constant(1, opts.order)};
    for (int d = 0; d <= 12; ++d) {
        for (const auto &b : vd_basis(d).basis) {
            rhos.push_back(with_order(b, opts.order));
        }
    }
    const std::size_t basis_count = rhos.size() - 1;
    for (std::size_t i = 1; i < rhos.size(); ++i) {
        const auto f = dagger(rhos[i]);
        for (const auto law : {LawId::A, LawId::B, LawId::C}) {
            const auto r = check_law(law, f);
            if (!r.holds) {
                out.fail("dagger of basis element " + std::to_string(i) + " violates (" + std::string(to_string(law))
                         + ")" + mismatch_text(r.first_violation));
            }
        }
    }
    Rng rng(opts.seed + 6);
    std::vector<Series2> others;
    for (int i = 0; i < 6; ++i) {
        others.push_back(random_series(rng, 10));
        others.push_back(even_part(random_series(rng, 10)));
    }
    others.push_back(d4_invariant_p1(opts.order));
    others.push_back(d4_invariant_p2(opts.order));
    std::size_t instances = 0;
    const auto run = [&](const Series2 &f, SeriesRole role) {
        ++instances;
        for (const auto &imp : equivalence_suite(f, role).implications) {
            if (!imp.confirmed()) {
                out.fail("implication " + imp.name + " fails on instance " + std::to_string(instances));
            }
        }
    };
    for (const auto &rho : rhos) {
        run(rho, SeriesRole::rho);
        run(dagger(rho), SeriesRole::f2);
    }
    for (const auto &f : others) {
        run(f, SeriesRole::rho);
        run(f, SeriesRole::f2);
    }
    if (out.pass) {
        out.detail = std::to_string(basis_count) + " basis elements pass (A)(B)(C); " + std::to_string(instances)
                     + " instances confirm every implication";
    }
    return out;
}

// Criterion 7.
Outcome dilativity(const Options &opts)
{
    Outcome out;
    const int n = opts.order;
    const std::vector<int> ms{2, 3};
    const std::vector<LatticePolygon> ps{standard_triangle(), unit_square()};
    int pieces = 0;
    for (const int d : {0, 4, 6, 8, 12}) {
        for (const auto &b : vd_basis(d).basis) {
            ++pieces;
            const auto spec = simple_spec(b, n);
            const auto r = check_dilative(spec, d - 2, ms, ps);
            if (!r.holds) {
                const auto &c = r.cases.at(*r.first_failure);
                out.fail("degree " + std::to_string(d) + " piece not " + std::to_string(d - 2) + "-dilative, m = "
                         + std::to_string(c.m) + mismatch_text(c.comparison.first_violation));
            }
            const auto data = build_triangle_data(spec);
            for (int m = 1; m <= 4; ++m) {
                const auto c = compare(z_mT_closed(spec, m), z_polygon(spec, data, dilate(standard_triangle(), m)));
                if (!c.holds) {
                    out.fail("closed form for " + std::to_string(m) + "T, degree " + std::to_string(d)
                             + mismatch_text(c.first_violation));
                }
            }
        }
    }
    for (int m = 0; m <= 6; ++m) {
        const auto c = compare(g_m_closed(m, n - 1), g_m_direct(m, n - 1));
        if (!c.holds || c.verified_order != n - 1) {
            out.fail("g_" + std::to_string(m) + " closed form" + mismatch_text(c.first_violation));
        }
    }
    if (out.pass) {
        out.detail = std::to_string(pieces) + " basis pieces dilative; closed forms match for mT (m <= 4) and g_m (m <= 6)";
    }
    return out;
}

// Criterion 8.
Outcome odd_dilativity(const Options &opts)
{
    Outcome out;
    const int n = opts.order;
    const std::vector<int> ms{2, 3};
    const std::vector<LatticePolygon> segments{hull_normalize({{0, 0}, {1, 0}}), hull_normalize({{0, 0}, {2, 3}}),
                                               hull_normalize({{-1, 1}, {3, -1}})};
    const std::vector<LatticePolygon> polygons{standard_triangle(), unit_square(),
                                               hull_normalize({{0, 0}, {3, 0}, {2, 1}, {0, 1}})};
    const auto corpus = polygon_corpus(opts.seed);
    for (const int delta : {-1, 1, 3}) {
        const ValuationSpec spec(0, odd_basis(delta, n / 2), Series2(n), n);
        for (const auto *set : {&segments, &polygons}) {
            const auto r = check_dilative(spec, delta, ms, *set);
            if (!r.holds) {
                const auto &c = r.cases.at(*r.first_failure);
                out.fail("delta = " + std::to_string(delta) + " on " + polygon_text(c.polygon) + ", m = "
                         + std::to_string(c.m) + mismatch_text(c.comparison.first_violation));
            }
        }
        for (const auto &p : corpus) {
            const auto s = surface_formula_check(spec, p);
            if (!s.holds) {
                out.fail("edge formula, delta = " + std::to_string(delta) + " on " + polygon_text(p)
                         + mismatch_text(s.comparison.first_violation));
            }
        }
    }
    if (out.pass) {
        out.detail = "delta = -1, 1, 3 dilative on segments and polygons; edge formula on "
                     + std::to_string(corpus.size()) + " polygons";
    }
    return out;
}

// Criterion 9.
Outcome val0_adjudication(const Options &opts)
{
    Outcome out;
    const int n = opts.order;
    const auto report = calibrate_val0_report(n - 1);
    if (!report.kappa) {
        std::string what = "calibration found no unique kappa:";
        for (const auto &c : report.candidates) {
            what += " kappa = " + to_string(c.kappa);
            if (c.report.holds) {
                what += " passes;";
            } else {
                const auto &f = c.report.cases.at(*c.report.first_failure);
                what += " fails on " + polygon_text(f.polygon) + " m = " + std::to_string(f.m)
                        + mismatch_text(f.comparison.first_violation) + ";";
            }
        }
        what.pop_back();
        out.fail(what);
        return out;
    }
    const Series2 val0 = Series2::constant(*report.kappa, n);
    for (const auto &[name, spec] : spec_corpus(n)) {
        const auto back = reassemble(dilative_decompose(spec, 2 * n, val0));
        if (back.c() != spec.c() || !agree(back.g(), spec.g()) || !agree(back.rho(), spec.rho())) {
            out.fail("decomposition of " + name + " does not reassemble");
        }
    }
    if (out.pass) {
        out.detail = "kappa = " + to_string(*report.kappa);
    }
    return out;
}

// Criterion 10.
Outcome d4_suite(const Options &)
{
    Outcome out;
    const auto group = d4_group();
    if (group.size() != 8) {
        out.fail("group has " + std::to_string(group.size()) + " elements");
    }
    constexpr int n = 14;
    const auto p1 = d4_invariant_p1(n);
    const auto p2 = d4_invariant_p2(n);
    for (const auto &m : group) {
        for (const auto *p : {&p1, &p2}) {
            if (!agree(act_on_series(m, *p), *p)) {
                out.fail("generator moved by a group element");
            }
        }
    }
    std::vector<Series2> invariants;
    for (int i = 0; 2 * i <= 12; ++i) {
        for (int j = 0; 2 * i + 4 * j <= 12; ++j) {
            auto h = Series2::constant(1, n);
            for (int k = 0; k < i; ++k) {
                h = h * p1;
            }
            for (int k = 0; k < j; ++k) {
                h = h * p2;
            }
            invariants.push_back(h);
        }
    }
    for (int d = 0; d <= 12; ++d) {
        for (const auto &b : vd_basis(d).basis) {
            invariants.push_back(with_order(b, n));
            const auto st = to_st(with_order(b, n));
            const auto r = check_law(LawId::Adoubleprime, st);
            if (!r.holds) {
                out.fail("to_st of a degree " + std::to_string(d) + " solution violates (Adoubleprime)"
                         + mismatch_text(r.first_violation));
            }
        }
    }
    invariants.push_back(Rational(3) * invariants[1] - Rational(1, 7) * invariants[4] + invariants.back());
    for (const auto &h : invariants) {
        try {
            const auto c = compare(d4_recompose(d4_decompose(h)), h);
            if (!c.holds) {
                out.fail("d4 round trip" + mismatch_text(c.first_violation));
            }
        } catch (const Error &e) {
            out.fail(std::string("d4 decomposition failed: ") + e.what());
        }
    }
    if (out.pass) {
        out.detail = "8 elements; " + std::to_string(invariants.size()) + " invariants round-trip; to_st maps solutions for d <= 12";
    }
    return out;
}

struct Entry {
    const char *title;
    Outcome (*run)(const Options &);
};

constexpr Entry entries[criterion_count] = {
    {"dimension table", dimension_table},
    {"Laplace cross-oracle", laplace_cross_oracle},
    {"valuation axiom", valuation_axiom},
    {"equivariance", equivariance},
    {"transform round-trips", round_trips},
    {"law equivalences", law_equivalences},
    {"dilativity of simple pieces", dilativity},
    {"odd dilativity", odd_dilativity},
    {"Val0 calibration", val0_adjudication},
    {"D4 suite", d4_suite},
};

} // namespace

std::vector<LatticePolygon> polygon_corpus(std::uint64_t seed)
{
    const auto t = standard_triangle();
    std::vector<LatticePolygon> out{t,
                                    dilate(t, 2),
                                    dilate(t, 3),
                                    unit_square(),
                                    hull_normalize({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
                                    hull_normalize({{0, 0}, {3, 0}, {2, 1}, {0, 1}}),
                                    hull_normalize({{0, 0}, {4, 0}, {3, 2}, {1, 2}}),
                                    hull_normalize({{0, 0}, {2, 0}, {3, 1}, {2, 2}, {0, 2}, {-1, 1}})};
    Rng rng(seed);
    while (out.size() < 10) {
        const auto p = random_hull(rng, 3, 6);
        if (lattice_points(p).size() > 3) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<NamedSpec> spec_corpus(int order)
{
    const int n = order;
    return {
        {"rho = 1", ValuationSpec(0, Series1(n / 2), Series2::constant(1, n), n)},
        {"V_4", simple_spec(vd_basis(4).basis.at(0), n)},
        {"V_6", simple_spec(vd_basis(6).basis.at(0), n)},
        {"odd delta = 1", ValuationSpec(0, odd_basis(1, n / 2), Series2(n), n)},
        {"(1, cosh, 0)", ValuationSpec(1, cosh_series(n / 2), Series2(n), n)},
    };
}

CriterionResult run_criterion(int id, const Options &opts)
{
    if (id < 1 || id > criterion_count) {
        throw Error(ErrorCode::malformed_input, "no criterion " + std::to_string(id));
    }
    const auto &e = entries[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = e.title;
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto o = e.run(opts);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception &ex) {
        r.pass = false;
        r.detail = std::string("unexpected error: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_all(const Options &opts)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count; ++id) {
        out.push_back(run_criterion(id, opts));
    }
    return out;
}

} // namespace latval::selftest
