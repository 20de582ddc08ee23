#include <latval/io.hpp>

#include <fstream>
#include <sstream>

#include <latval/error.hpp>

namespace latval::io
{

namespace
{

[[noreturn]] void malformed(const std::string &where, const std::string &what)
{
    throw Error(ErrorCode::malformed_input, where + ": " + what);
}

const Json &member(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object()) {
        malformed(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        malformed(where, std::string("missing \"") + key + "\"");
    }
    return *it;
}

std::int64_t as_int(const Json &j, const std::string &where)
{
    if (!j.is_number_integer()) {
        malformed(where, "expected an integer");
    }
    return j.get<std::int64_t>();
}

int as_order(const Json &j, const std::string &where)
{
    const auto n = as_int(j, where);
    if (n < 0 || n > 1000) {
        malformed(where, "order out of range");
    }
    return static_cast<int>(n);
}

Rational as_rational(const Json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        malformed(where, "expected a rational string");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error &e) {
        malformed(where, e.what());
    }
}

void expect_vars(const Json &j, std::size_t count)
{
    const auto &vars = member(j, "vars", "series");
    const Json expected = count == 2 ? Json::array({"x", "y"}) : Json::array({"x"});
    if (vars != expected) {
        malformed("series.vars", "expected " + expected.dump());
    }
}

Json rational_json(const Rational &q)
{
    return to_string(q);
}

Json exponent_json(Exponent e)
{
    return Json::array({e.x, e.y});
}

Json optional_mismatch(const std::optional<Mismatch> &m)
{
    return m ? to_json(*m) : Json(nullptr);
}

Json matrix_json(const IntMatrix2 &m)
{
    return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})});
}

} // namespace

Json to_json(const Series2 &f)
{
    Json terms = Json::array();
    for (const auto &[e, c] : f.terms()) {
        terms.push_back(Json{{"e", exponent_json(e)}, {"c", rational_json(c)}});
    }
    return Json{{"vars", Json::array({"x", "y"})}, {"order", f.order()}, {"terms", std::move(terms)}};
}

Json to_json(const Series1 &g)
{
    Json terms = Json::array();
    for (const auto &[k, c] : g.terms()) {
        terms.push_back(Json{{"e", Json::array({k})}, {"c", rational_json(c)}});
    }
    return Json{{"vars", Json::array({"x"})}, {"order", g.order()}, {"terms", std::move(terms)}};
}

Series2 series2_from_json(const Json &j)
{
    expect_vars(j, 2);
    const int order = as_order(member(j, "order", "series"), "series.order");
    const auto &terms = member(j, "terms", "series");
    if (!terms.is_array()) {
        malformed("series.terms", "expected an array");
    }
    Series2::Terms out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto where = "series.terms[" + std::to_string(i) + "]";
        const auto &e = member(terms[i], "e", where);
        if (!e.is_array() || e.size() != 2) {
            malformed(where + ".e", "expected [p, q]");
        }
        const auto p = as_int(e[0], where + ".e");
        const auto q = as_int(e[1], where + ".e");
        if (p < 0 || q < 0 || p + q > order) {
            malformed(where + ".e", "exponent outside 0 <= p + q <= order");
        }
        const Exponent ex{static_cast<int>(p), static_cast<int>(q)};
        if (out.contains(ex)) {
            malformed(where + ".e", "duplicate exponent");
        }
        out.emplace(ex, as_rational(member(terms[i], "c", where), where + ".c"));
    }
    return Series2(order, std::move(out));
}

Series1 series1_from_json(const Json &j)
{
    expect_vars(j, 1);
    const int order = as_order(member(j, "order", "series"), "series.order");
    const auto &terms = member(j, "terms", "series");
    if (!terms.is_array()) {
        malformed("series.terms", "expected an array");
    }
    Series1::Terms out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto where = "series.terms[" + std::to_string(i) + "]";
        const auto &e = member(terms[i], "e", where);
        if (!e.is_array() || e.size() != 1) {
            malformed(where + ".e", "expected [k]");
        }
        const auto k = as_int(e[0], where + ".e");
        if (k < 0 || k > order) {
            malformed(where + ".e", "exponent outside 0 <= k <= order");
        }
        if (out.contains(static_cast<int>(k))) {
            malformed(where + ".e", "duplicate exponent");
        }
        out.emplace(static_cast<int>(k), as_rational(member(terms[i], "c", where), where + ".c"));
    }
    return Series1(order, std::move(out));
}

std::variant<Series1, Series2> series_from_json(const Json &j)
{
    const auto &vars = member(j, "vars", "series");
    if (vars.is_array() && vars.size() == 1) {
        return series1_from_json(j);
    }
    return series2_from_json(j);
}

Json to_json(const LatticePolygon &p)
{
    Json v = Json::array();
    for (const auto &q : p.vertices()) {
        v.push_back(Json::array({q.x, q.y}));
    }
    return Json{{"vertices", std::move(v)}};
}

LatticePolygon polygon_from_json(const Json &j)
{
    const auto &v = member(j, "vertices", "polygon");
    if (!v.is_array() || v.empty()) {
        malformed("polygon.vertices", "expected a non-empty array");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto where = "polygon.vertices[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) {
            malformed(where, "expected [x, y]");
        }
        const auto x = as_int(v[i][0], where);
        const auto y = as_int(v[i][1], where);
        constexpr std::int64_t bound = std::int64_t{1} << 30;
        if (x <= -bound || x >= bound || y <= -bound || y >= bound) {
            malformed(where, "coordinate out of range");
        }
        pts.push_back({x, y});
    }
    return hull_normalize(pts);
}

Json to_json(const AffineUnimodular &g)
{
    return Json{{"m", matrix_json(g.matrix())}, {"v", Json::array({g.shift().x, g.shift().y})}};
}

AffineUnimodular affine_from_json(const Json &j)
{
    const auto &m = member(j, "m", "affine");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array()
        || m[1].size() != 2) {
        malformed("affine.m", "expected [[a, b], [c, d]]");
    }
    const IntMatrix2 mat{as_int(m[0][0], "affine.m"), as_int(m[0][1], "affine.m"), as_int(m[1][0], "affine.m"),
                         as_int(m[1][1], "affine.m")};
    Point v{0, 0};
    if (j.contains("v")) {
        const auto &vj = j["v"];
        if (!vj.is_array() || vj.size() != 2) {
            malformed("affine.v", "expected [alpha, beta]");
        }
        v = {as_int(vj[0], "affine.v"), as_int(vj[1], "affine.v")};
    }
    if (mat.det() != 1 && mat.det() != -1) {
        malformed("affine.m", "determinant must be 1 or -1");
    }
    return AffineUnimodular(mat, v);
}

Json to_json(const ValuationSpec &spec)
{
    return Json{{"c", rational_json(spec.c())},
                {"g", to_json(spec.g())},
                {"rho", to_json(spec.rho())},
                {"order", spec.order()}};
}

ValuationSpec spec_from_json(const Json &j, int default_order)
{
    if (!j.is_object()) {
        malformed("spec", "expected an object");
    }
    const int order = j.contains("order") ? as_order(j["order"], "spec.order") : default_order;
    if (order < 2) {
        malformed("spec.order", "must be at least 2");
    }
    const auto c = as_rational(member(j, "c", "spec"), "spec.c");
    const auto g = series1_from_json(member(j, "g", "spec"));
    const auto rho = series2_from_json(member(j, "rho", "spec"));
    if (g.order() < order / 2) {
        malformed("spec.g", "known only to order " + std::to_string(g.order()) + ", need " + std::to_string(order / 2));
    }
    if (rho.order() < order) {
        malformed("spec.rho", "known only to order " + std::to_string(rho.order()) + ", need " + std::to_string(order));
    }
    return ValuationSpec(c, g, rho, order);
}

Json to_json(const TriangleData &d)
{
    return Json{{"effective_order", d.effective_order},
                {"f0", to_json(d.f0)},
                {"f1", to_json(d.f1)},
                {"f2", to_json(d.f2)},
                {"zT", to_json(d.zT)}};
}

Json to_json(const Mismatch &m)
{
    return Json{{"exponent", exponent_json(m.exponent)}, {"lhs", rational_json(m.lhs)}, {"rhs", rational_json(m.rhs)}};
}

Json to_json(const Comparison &c)
{
    return Json{{"holds", c.holds}, {"verified_order", c.verified_order}, {"first_violation", optional_mismatch(c.first_violation)}};
}

Json to_json(const LawReport &r)
{
    Json j{{"law", std::string(to_string(r.law))},
           {"holds", r.holds},
           {"verified_order", r.verified_order},
           {"first_violation", optional_mismatch(r.first_violation)}};
    if (r.failing_generator) {
        j["failing_generator"] = matrix_json(*r.failing_generator);
    }
    return j;
}

Json to_json(const DilativeReport &r)
{
    Json cases = Json::array();
    for (const auto &c : r.cases) {
        cases.push_back(Json{{"m", c.m}, {"polygon", to_json(c.polygon)}, {"comparison", to_json(c.comparison)}});
    }
    return Json{{"holds", r.holds},
                {"verified_order", r.verified_order},
                {"first_failure", r.first_failure ? Json(*r.first_failure) : Json(nullptr)},
                {"cases", std::move(cases)}};
}

Json to_json(const DilativeComponents &parts)
{
    Json odd = Json::array();
    for (const auto &[delta, a] : parts.odd) {
        odd.push_back(Json{{"delta", delta}, {"coefficient", rational_json(a)}});
    }
    Json even = Json::array();
    for (const auto &[delta, rho] : parts.even_simple) {
        even.push_back(Json{{"delta", delta}, {"rho", to_json(rho)}});
    }
    return Json{{"order", parts.order},
                {"alpha0", rational_json(parts.alpha0)},
                {"kappa", rational_json(parts.kappa)},
                {"val0_rho", to_json(parts.val0_rho)},
                {"odd", std::move(odd)},
                {"even_simple", std::move(even)},
                {"remainder_g", to_json(parts.remainder_g)},
                {"remainder_rho", to_json(parts.remainder_rho)}};
}

Json to_json(const CalibrationReport &r)
{
    Json cands = Json::array();
    for (const auto &c : r.candidates) {
        cands.push_back(Json{{"kappa", rational_json(c.kappa)}, {"report", to_json(c.report)}});
    }
    return Json{{"kappa", r.kappa ? rational_json(*r.kappa) : Json(nullptr)}, {"candidates", std::move(cands)}};
}

Json to_json(const SurfaceReport &r)
{
    return Json{{"holds", r.holds},
                {"comparison", to_json(r.comparison)},
                {"polygon_value", to_json(r.polygon_value)},
                {"edge_half_sum", to_json(r.edge_half_sum)}};
}

Json to_json(const VdBasis &b)
{
    Json list = Json::array();
    for (const auto &f : b.basis) {
        list.push_back(to_json(f));
    }
    return Json{{"degree", b.degree}, {"dimension", b.basis.size()}, {"basis", std::move(list)}};
}

Json to_json(const DimRow &row)
{
    return Json{{"d", row.degree}, {"computed", row.computed}, {"predicted", row.predicted}, {"match", row.match}};
}

Json to_json(const EquivalenceReport &r)
{
    Json list = Json::array();
    for (const auto &i : r.implications) {
        list.push_back(
            Json{{"name", i.name}, {"premise", i.premise}, {"conclusion", i.conclusion}, {"confirmed", i.confirmed()}});
    }
    return Json{{"all_confirmed", r.all_confirmed()}, {"implications", std::move(list)}};
}

Json parse_text(const std::string &text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        malformed("json", e.what());
    }
}

Json read_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        malformed(path.string(), "cannot open");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error &e) {
        malformed(path.string(), e.what());
    }
}

std::string dump(const Json &j)
{
    return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path &path, const Json &j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::malformed_input, path.string() + ": cannot write");
    }
    out << dump(j);
}

} // namespace latval::io
