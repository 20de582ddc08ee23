#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <latval/error.hpp>
#include <latval/io.hpp>
#include <latval/laplace.hpp>
#include <latval/selftest.hpp>

namespace latval::cli
{

namespace
{

using io::Json;
namespace fs = std::filesystem;

enum class Format { json, table };

struct Status {
    std::string status = "holds";
    int verified_order = 0;
    Json first_violation = nullptr;
};

class Context
{
public:
    Context(std::ostream &out, std::ostream &err, std::string echo) : m_out(out), m_err(err), m_echo(std::move(echo))
    {
    }

    Format format = Format::json;
    std::optional<int> order_flag;

    int order() const
    {
        if (order_flag) {
            return *order_flag;
        }
        if (const char *env = std::getenv("LATVAL_ORDER"); env && *env) {
            int n = 0;
            std::istringstream in(env);
            if (!(in >> n) || !in.eof() || n < 2 || n > 200) {
                throw Error(ErrorCode::malformed_input, std::string("LATVAL_ORDER: not a usable order: ") + env);
            }
            return n;
        }
        return default_order;
    }

    Json report(const Status &s, Json result, const std::vector<std::string> &artifacts = {}) const
    {
        return Json{{"command", m_echo},
                    {"status", s.status},
                    {"verified_order", s.verified_order},
                    {"first_violation", s.first_violation},
                    {"artifacts", artifacts},
                    {"result", std::move(result)}};
    }

    // Writes a report, in table form a few key lines followed by `table`.
    int emit_report(const Status &s, Json result, const std::string &table = {},
                    const std::vector<std::string> &artifacts = {}) const
    {
        if (format == Format::json) {
            m_out << io::dump(report(s, std::move(result), artifacts));
        } else {
            m_out << "status: " << s.status << "\nverified_order: " << s.verified_order << "\n";
            if (!s.first_violation.is_null()) {
                m_out << "first_violation: " << s.first_violation.dump() << "\n";
            }
            for (const auto &a : artifacts) {
                m_out << "artifact: " << a << "\n";
            }
            m_out << table;
        }
        return s.status == "holds" ? exit_ok : exit_violated;
    }

    // A produced object goes to `out_path` when given (with a report on
    // stdout), otherwise straight to stdout.
    int emit_artifact(const Json &artifact, const std::string &table, const std::string &out_path,
                      int verified_order) const
    {
        if (!out_path.empty()) {
            io::write_file(out_path, artifact);
            Status s;
            s.verified_order = verified_order;
            return emit_report(s, nullptr, {}, {out_path});
        }
        if (format == Format::json) {
            m_out << io::dump(artifact);
        } else {
            m_out << table;
        }
        return exit_ok;
    }

    int fail(const Error &e) const
    {
        const int code = exit_code(e.code());
        Status s;
        s.status = code == exit_violated ? "violated" : "error";
        if (format == Format::json) {
            m_out << io::dump(report(s, Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}));
        }
        m_err << "latval: " << e.what() << "\n";
        return code;
    }

    std::ostream &err() const
    {
        return m_err;
    }

    static int exit_code(ErrorCode c)
    {
        switch (c) {
            case ErrorCode::malformed_input:
            case ErrorCode::empty_input:
            case ErrorCode::not_full_dimensional:
            case ErrorCode::not_segment:
            case ErrorCode::not_primitive:
            case ErrorCode::not_unimodular:
            case ErrorCode::not_unimodular_triangle:
            case ErrorCode::degree_exceeds_order:
            case ErrorCode::constant_term_not_zero:
            case ErrorCode::division_by_non_unit:
                return exit_malformed;
            case ErrorCode::invalid_rho:
            case ErrorCode::law_violation:
            case ErrorCode::not_divisible:
            case ErrorCode::not_invariant:
            case ErrorCode::no_representation:
            case ErrorCode::not_simple_spec:
            case ErrorCode::no_candidate_passes:
            case ErrorCode::both_pass:
                return exit_violated;
            case ErrorCode::no_valid_chord:
                return exit_internal;
        }
        return exit_internal;
    }

private:
    std::ostream &m_out;
    std::ostream &m_err;
    std::string m_echo;
};

std::string monomial_text(Exponent e, const char *u = "x", const char *v = "y")
{
    std::string s;
    if (e.x > 0) {
        s += e.x == 1 ? std::string(u) : u + ("^" + std::to_string(e.x));
    }
    if (e.y > 0) {
        s += (s.empty() ? "" : " ") + (e.y == 1 ? std::string(v) : v + ("^" + std::to_string(e.y)));
    }
    return s.empty() ? "1" : s;
}

std::string series_table(const Series2 &f)
{
    std::ostringstream s;
    s << "order " << f.order() << "\n";
    for (const auto &[e, c] : f.terms()) {
        s << std::setw(12) << monomial_text(e) << "  " << to_string(c) << "\n";
    }
    return s.str();
}

std::string polynomial_text(const Series2 &f, const char *u = "x", const char *v = "y")
{
    std::string s;
    for (const auto &[e, c] : f.terms()) {
        const bool neg = sgn(c) < 0;
        const Rational a = neg ? Rational(-c) : c;
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        const bool unit = a == 1;
        if (!unit || (e.x == 0 && e.y == 0)) {
            s += to_string(a);
            if (e.x || e.y) {
                s += " ";
            }
        }
        if (e.x || e.y) {
            s += monomial_text(e, u, v);
        }
    }
    return s.empty() ? "0" : s;
}

Json violation_json(const std::string &criterion, const std::optional<Mismatch> &m)
{
    if (!m) {
        return nullptr;
    }
    Json j{{"criterion", criterion}};
    j.update(io::to_json(*m));
    return j;
}

Series2 read_series2(const std::string &path)
{
    return io::series2_from_json(io::read_file(path));
}

ValuationSpec read_spec(const Context &ctx, const std::string &path)
{
    return io::spec_from_json(io::read_file(path), ctx.order());
}

LatticePolygon read_polygon(const std::string &path)
{
    return io::polygon_from_json(io::read_file(path));
}

std::vector<int> parse_int_list(const std::string &text, const char *what)
{
    std::vector<int> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw Error(ErrorCode::malformed_input, std::string(what) + ": not an integer list: " + text);
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::malformed_input, std::string(what) + ": empty list");
    }
    return out;
}

struct VdArgs {
    int degree = 0;
    std::string coords = "xy";
    int max = 30;
    std::string out;
};

int cmd_vd_basis(const Context &ctx, const VdArgs &a)
{
    const bool st = a.coords == "st";
    const auto b = st ? st_basis(a.degree) : vd_basis(a.degree);
    Json list = Json::array();
    std::string table = "degree " + std::to_string(a.degree) + ", dimension " + std::to_string(b.basis.size()) + "\n";
    for (const auto &f : b.basis) {
        list.push_back(io::to_json(f));
        table += "  " + (st ? polynomial_text(f, "s", "t") : polynomial_text(f)) + "\n";
    }
    return ctx.emit_artifact(list, table, a.out, a.degree);
}

int cmd_vd_dims(const Context &ctx, const VdArgs &a)
{
    const auto rows = dims_table(a.max);
    Json list = Json::array();
    std::ostringstream table;
    table << std::setw(4) << "d" << std::setw(10) << "computed" << std::setw(11) << "predicted" << std::setw(7)
          << "match\n";
    Status s;
    s.verified_order = a.max;
    for (const auto &r : rows) {
        list.push_back(io::to_json(r));
        table << std::setw(4) << r.degree << std::setw(10) << r.computed << std::setw(11) << r.predicted
              << std::setw(7) << (r.match ? "yes" : "NO") << "\n";
        if (!r.match && s.status == "holds") {
            s.status = "violated";
            s.first_violation = Json{{"criterion", "dimension"}, {"degree", r.degree}, {"lhs", r.computed},
                                     {"rhs", r.predicted}};
        }
    }
    return ctx.emit_report(s, Json{{"rows", std::move(list)}}, table.str());
}

int cmd_check_law(const Context &ctx, const std::string &law_name, const std::string &input)
{
    const auto f = read_series2(input);
    std::vector<LawId> laws;
    if (law_name == "all") {
        laws = all_laws();
    } else if (const auto id = parse_law_id(law_name)) {
        laws.push_back(*id);
    } else {
        throw Error(ErrorCode::malformed_input, "unknown law: " + law_name);
    }
    Status s;
    s.verified_order = f.order();
    Json list = Json::array();
    std::string table;
    for (const auto law : laws) {
        const auto r = check_law(law, f);
        list.push_back(io::to_json(r));
        s.verified_order = std::min(s.verified_order, r.verified_order);
        table += std::string(to_string(law)) + ": " + (r.holds ? "holds" : "violated") + "\n";
        if (!r.holds && s.status == "holds") {
            s.status = "violated";
            s.first_violation = violation_json(std::string(to_string(law)), r.first_violation);
        }
    }
    return ctx.emit_report(s, laws.size() == 1 ? list[0] : Json{{"laws", list}}, table);
}

int cmd_transform(const Context &ctx, const std::string &op, const std::string &input, const std::string &affine,
                  const std::string &out)
{
    const auto f = read_series2(input);
    if (op == "d4") {
        const auto dec = d4_decompose(f);
        const Json j{{"g", io::to_json(dec.g)}, {"weighted_order", dec.weighted_order}};
        return ctx.emit_artifact(j, "weighted order " + std::to_string(dec.weighted_order) + "\n" + series_table(dec.g),
                                 out, dec.weighted_order);
    }
    Series2 r;
    if (op == "sharp") {
        r = sharp(f);
    } else if (op == "dagger") {
        r = dagger(f);
    } else if (op == "diamond") {
        r = diamond(f);
    } else if (op == "to_st") {
        r = to_st(f);
    } else if (op == "from_st") {
        r = from_st(f);
    } else if (op == "act") {
        if (affine.empty()) {
            throw Error(ErrorCode::malformed_input, "act needs --affine");
        }
        r = act_on_series(io::affine_from_json(io::read_file(affine)), f);
    } else {
        throw Error(ErrorCode::malformed_input, "unknown transform: " + op);
    }
    return ctx.emit_artifact(io::to_json(r), series_table(r), out, r.order());
}

int cmd_construct(const Context &ctx, const std::string &spec_path, const std::string &out)
{
    const auto spec = read_spec(ctx, spec_path);
    const auto d = build_triangle_data(spec);
    return ctx.emit_artifact(io::to_json(d), "zT\n" + series_table(d.zT), out, d.effective_order);
}

int cmd_evaluate(const Context &ctx, const std::string &spec_path, const std::string &polygon, const std::string &out)
{
    const auto spec = read_spec(ctx, spec_path);
    const auto z = z_polygon(spec, read_polygon(polygon));
    return ctx.emit_artifact(io::to_json(z), series_table(z), out, z.order());
}

int cmd_laplace(const Context &ctx, const std::string &polygon, std::optional<int> order, const std::string &out)
{
    const int n = order ? *order : ctx.order() - 1;
    if (n < 0) {
        throw Error(ErrorCode::malformed_input, "order must be non-negative");
    }
    const auto l = laplace_plus(read_polygon(polygon), n);
    return ctx.emit_artifact(io::to_json(l), series_table(l), out, n);
}

std::vector<LatticePolygon> collect_polygons(const std::vector<std::string> &files, const std::string &dir)
{
    std::vector<LatticePolygon> out;
    for (const auto &f : files) {
        out.push_back(read_polygon(f));
    }
    if (!dir.empty()) {
        if (!fs::is_directory(dir)) {
            throw Error(ErrorCode::malformed_input, dir + ": not a directory");
        }
        std::vector<fs::path> paths;
        for (const auto &e : fs::directory_iterator(dir)) {
            if (e.is_regular_file() && e.path().extension() == ".json") {
                paths.push_back(e.path());
            }
        }
        std::sort(paths.begin(), paths.end());
        for (const auto &p : paths) {
            out.push_back(read_polygon(p.string()));
        }
    }
    if (out.empty()) {
        out = {standard_triangle(), unit_square()};
    }
    return out;
}

int cmd_dilative(const Context &ctx, const std::string &spec_path, int delta, const std::string &ms_text,
                 const std::vector<std::string> &files, const std::string &dir)
{
    const auto spec = read_spec(ctx, spec_path);
    const auto ms = parse_int_list(ms_text, "--m");
    if (std::any_of(ms.begin(), ms.end(), [](int m) { return m < 1; })) {
        throw Error(ErrorCode::malformed_input, "--m: dilation factors must be positive");
    }
    const auto polygons = collect_polygons(files, dir);
    const auto r = check_dilative(spec, delta, ms, polygons);
    Status s;
    s.verified_order = r.verified_order;
    std::ostringstream table;
    for (const auto &c : r.cases) {
        table << "m = " << c.m << "  " << io::to_json(c.polygon)["vertices"].dump() << "  "
              << (c.comparison.holds ? "holds" : "violated") << "\n";
    }
    if (!r.holds) {
        s.status = "violated";
        s.first_violation = violation_json("dilative", r.cases.at(*r.first_failure).comparison.first_violation);
    }
    return ctx.emit_report(s, io::to_json(r), table.str());
}

int cmd_decompose(const Context &ctx, const std::string &spec_path, std::optional<int> delta_max,
                  const std::string &kappa, const std::string &out)
{
    const auto spec = read_spec(ctx, spec_path);
    const int n = spec.order();
    Series2 val0(n);
    if (kappa == "auto") {
        val0 = Series2::constant(calibrate_val0(n - 1), n);
    } else if (kappa == "solve") {
        const auto fit = solve_val0_rho(n);
        if (!fit.admissible || !fit.dilative) {
            throw Error(ErrorCode::no_representation, "the fitted Val0 rho is not admissible and 0-dilative");
        }
        val0 = fit.rho;
    } else if (kappa == "0" || kappa == "-1") {
        val0 = Series2::constant(parse_rational(kappa), n);
    } else {
        throw Error(ErrorCode::malformed_input, "--kappa: expected auto, 0, -1 or solve");
    }
    const auto parts = dilative_decompose(spec, delta_max ? *delta_max : n, val0);
    std::ostringstream table;
    table << "alpha0 " << to_string(parts.alpha0) << "\nkappa " << to_string(parts.kappa) << "\n";
    for (const auto &[d, a] : parts.odd) {
        table << "odd delta " << d << "  " << to_string(a) << "\n";
    }
    for (const auto &[d, rho] : parts.even_simple) {
        table << "even delta " << d << "  " << polynomial_text(rho) << "\n";
    }
    return ctx.emit_artifact(io::to_json(parts), table.str(), out, n - 1);
}

int cmd_calibrate(const Context &ctx)
{
    const int n = ctx.order();
    const auto r = calibrate_val0_report(n - 1);
    Status s;
    s.verified_order = n - 1;
    std::ostringstream table;
    for (const auto &c : r.candidates) {
        table << "kappa = " << to_string(c.kappa) << ": ";
        if (c.report.holds) {
            table << "0-dilative\n";
            continue;
        }
        const auto &fc = c.report.cases.at(*c.report.first_failure);
        const auto &m = *fc.comparison.first_violation;
        table << "fails for m = " << fc.m << " at " << monomial_text(m.exponent) << " (" << to_string(m.lhs) << " vs "
              << to_string(m.rhs) << ")\n";
    }
    if (!r.kappa) {
        s.status = "violated";
        const auto &fc = r.candidates.front().report;
        if (fc.first_failure) {
            s.first_violation = violation_json("dilative kappa = " + to_string(r.candidates.front().kappa),
                                               fc.cases.at(*fc.first_failure).comparison.first_violation);
        }
    }
    Json result = io::to_json(r);
    try {
        const auto fit = solve_val0_rho(n);
        result["fit"] = Json{{"admissible", fit.admissible}, {"dilative", fit.dilative}, {"rho", io::to_json(fit.rho)}};
        table << "fitted rho: admissible " << (fit.admissible ? "yes" : "no") << ", 0-dilative "
              << (fit.dilative ? "yes" : "no") << "\n";
    } catch (const Error &e) {
        result["fit"] = Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
    return ctx.emit_report(s, std::move(result), table.str());
}

int cmd_selftest(const Context &ctx, const std::vector<int> &only, std::optional<std::uint64_t> seed)
{
    selftest::Options opts;
    opts.order = ctx.order();
    if (seed) {
        opts.seed = *seed;
    }
    std::vector<int> ids = only;
    if (ids.empty()) {
        for (int i = 1; i <= selftest::criterion_count; ++i) {
            ids.push_back(i);
        }
    }
    Status s;
    s.verified_order = opts.order - 1;
    Json list = Json::array();
    std::ostringstream table;
    for (const int id : ids) {
        const auto r = selftest::run_criterion(id, opts);
        list.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        table << (r.pass ? "PASS " : "FAIL ") << std::setw(2) << r.id << " " << r.title << ": " << r.detail << "\n";
        if (!r.pass && s.status == "holds") {
            s.status = "violated";
            s.first_violation = Json{{"criterion", r.id}, {"detail", r.detail}};
        }
    }
    return ctx.emit_report(s, Json{{"criteria", std::move(list)}}, table.str());
}

std::string join(const std::vector<std::string> &args)
{
    std::string s;
    for (const auto &a : args) {
        s += (s.empty() ? "" : " ") + a;
    }
    return s;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Context ctx(out, err, join(args));

    CLI::App app{"Exact toolkit for equivariant valuations on lattice polygons", "latval"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    int order_value = 0;
    auto *order_opt = app.add_option("--order", order_value, "working order N (default 12, or LATVAL_ORDER)")
                          ->check(CLI::Range(2, 200));

    VdArgs vd;
    auto *vd_cmd = app.add_subcommand("vd", "bases and dimensions of the homogeneous rho spaces");
    vd_cmd->require_subcommand(1);
    auto *vd_basis_cmd = vd_cmd->add_subcommand("basis", "exact basis in one degree");
    vd_basis_cmd->add_option("--degree", vd.degree)->required()->check(CLI::Range(0, 200));
    vd_basis_cmd->add_option("--coords", vd.coords)->check(CLI::IsMember({"xy", "st"}));
    vd_basis_cmd->add_option("--out", vd.out);
    auto *vd_dims_cmd = vd_cmd->add_subcommand("dims", "computed against predicted dimensions");
    vd_dims_cmd->add_option("--max", vd.max)->check(CLI::Range(0, 200));

    std::string law, input, op, affine, out_path, spec_path, polygon_path, polygon_dir, ms = "2,3", kappa = "auto";
    std::vector<std::string> polygon_files;
    int delta = 0;
    int laplace_order = 0;
    int delta_max = 0;
    std::vector<int> only;
    std::uint64_t seed = 0;

    auto *law_cmd = app.add_subcommand("check-law", "check one functional equation (or all)");
    law_cmd->add_option("--law", law)->required();
    law_cmd->add_option("--input", input)->required();

    auto *tr_cmd = app.add_subcommand("transform", "sharp, dagger, diamond, to_st, from_st, d4 or act");
    tr_cmd->add_option("--op", op)->required();
    tr_cmd->add_option("--input", input)->required();
    tr_cmd->add_option("--affine", affine, "affine map for --op act");
    tr_cmd->add_option("--out", out_path);

    auto *con_cmd = app.add_subcommand("construct", "triangle data of a spec");
    con_cmd->add_option("--spec", spec_path)->required();
    con_cmd->add_option("--out", out_path);

    auto *ev_cmd = app.add_subcommand("evaluate", "Z(P) for a spec");
    ev_cmd->add_option("--spec", spec_path)->required();
    ev_cmd->add_option("--polygon", polygon_path)->required();
    ev_cmd->add_option("--out", out_path);

    auto *lap_cmd = app.add_subcommand("laplace", "positive Laplace transform from exact moments");
    lap_cmd->add_option("--polygon", polygon_path)->required();
    auto *lap_order = lap_cmd->add_option("--order", laplace_order, "default N - 1")->check(CLI::Range(0, 200));
    lap_cmd->add_option("--out", out_path);

    auto *dil_cmd = app.add_subcommand("dilative", "test Z(mP)(x, y) = m^-delta Z(P)(mx, my)");
    dil_cmd->add_option("--spec", spec_path)->required();
    dil_cmd->add_option("--delta", delta)->required();
    dil_cmd->add_option("--m", ms, "comma separated factors");
    dil_cmd->add_option("--polygons", polygon_dir, "directory of polygon files");
    dil_cmd->add_option("--polygon", polygon_files, "polygon file, repeatable");

    auto *dec_cmd = app.add_subcommand("decompose", "split a spec into dilative pieces");
    dec_cmd->add_option("--spec", spec_path)->required();
    auto *dec_max = dec_cmd->add_option("--delta-max", delta_max, "default N")->check(CLI::Range(-2, 400));
    dec_cmd->add_option("--kappa", kappa, "auto, 0, -1 or solve");
    dec_cmd->add_option("--out", out_path);

    auto *cal_cmd = app.add_subcommand("calibrate", "test the constant rho candidates for the 0-dilative generator");

    auto *self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
    self_cmd->add_option("--only", only)->check(CLI::Range(1, selftest::criterion_count));
    auto *seed_opt = self_cmd->add_option("--seed", seed);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "latval: " << e.what() << "\n";
        return exit_malformed;
    }

    ctx.format = format == "table" ? Format::table : Format::json;
    if (order_opt->count() > 0) {
        ctx.order_flag = order_value;
    }

    try {
        if (vd_basis_cmd->parsed()) {
            return cmd_vd_basis(ctx, vd);
        }
        if (vd_dims_cmd->parsed()) {
            return cmd_vd_dims(ctx, vd);
        }
        if (law_cmd->parsed()) {
            return cmd_check_law(ctx, law, input);
        }
        if (tr_cmd->parsed()) {
            return cmd_transform(ctx, op, input, affine, out_path);
        }
        if (con_cmd->parsed()) {
            return cmd_construct(ctx, spec_path, out_path);
        }
        if (ev_cmd->parsed()) {
            return cmd_evaluate(ctx, spec_path, polygon_path, out_path);
        }
        if (lap_cmd->parsed()) {
            return cmd_laplace(ctx, polygon_path, lap_order->count() ? std::optional<int>(laplace_order) : std::nullopt,
                               out_path);
        }
        if (dil_cmd->parsed()) {
            return cmd_dilative(ctx, spec_path, delta, ms, polygon_files, polygon_dir);
        }
        if (dec_cmd->parsed()) {
            return cmd_decompose(ctx, spec_path, dec_max->count() ? std::optional<int>(delta_max) : std::nullopt, kappa,
                                 out_path);
        }
        if (cal_cmd->parsed()) {
            return cmd_calibrate(ctx);
        }
        if (self_cmd->parsed()) {
            return cmd_selftest(ctx, only, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
        }
    } catch (const Error &e) {
        return ctx.fail(e);
    } catch (const std::exception &e) {
        err << "latval: internal error: " << e.what() << "\n";
        return exit_internal;
    }
    err << "latval: no command\n";
    return exit_malformed;
}

} // namespace latval::cli
