#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <doctest.h>

#include <latval/io.hpp>
#include <latval/laplace.hpp>

#include "cli.hpp"

using namespace latval;
using io::Json;

namespace
{

const std::string data = LATVAL_TEST_DATA;

struct Run {
    int code = 0;
    std::string out;
    std::string err;

    Json json() const
    {
        return Json::parse(out);
    }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string path(const std::string &rel)
{
    return data + "/" + rel;
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "latval_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Sets an environment variable for the lifetime of the guard.
struct EnvGuard {
    explicit EnvGuard(const char *value)
    {
        setenv("LATVAL_ORDER", value, 1);
    }
    ~EnvGuard()
    {
        unsetenv("LATVAL_ORDER");
    }
};

} // namespace

TEST_CASE("vd dims matches the closed form")
{
    const auto r = run({"vd", "dims", "--max", "30"});
    CHECK(r.code == cli::exit_ok);
    const auto j = r.json();
    CHECK(j["status"] == "holds");
    REQUIRE(j["result"]["rows"].size() == 31);
    for (const auto &row : j["result"]["rows"]) {
        CHECK(row["match"] == true);
    }
    CHECK(j["result"]["rows"][12]["computed"] == 2);
    CHECK(j["result"]["rows"][26]["computed"] == 2);
}

TEST_CASE("vd basis")
{
    const auto r = run({"vd", "basis", "--degree", "4"});
    CHECK(r.code == cli::exit_ok);
    const auto j = r.json();
    REQUIRE(j.size() == 1);
    const auto f = io::series2_from_json(j[0]);
    CHECK(f.coeff(4, 0) == 1);
    CHECK(f.coeff(1, 3) == Rational(-4, 3));
    CHECK(run({"vd", "basis", "--degree", "2"}).json().empty());
    CHECK(run({"vd", "basis", "--degree", "12", "--coords", "st"}).json().size() == 2);
    CHECK(run({"vd", "basis", "--degree", "4", "--coords", "uv"}).code == cli::exit_malformed);
}

TEST_CASE("check-law")
{
    const auto ok = run({"check-law", "--law", "rhoformula", "--input", path("series/const1.json")});
    CHECK(ok.code == cli::exit_ok);
    CHECK(ok.json()["status"] == "holds");
    CHECK(ok.json()["verified_order"] <= 12);

    const auto bad = run({"check-law", "--law", "rhoformula", "--input", path("series/x.json")});
    CHECK(bad.code == cli::exit_violated);
    const auto j = bad.json();
    CHECK(j["status"] == "violated");
    CHECK(j["first_violation"]["criterion"] == "rhoformula");
    CHECK(j["first_violation"]["exponent"].is_array());

    const auto all = run({"check-law", "--law", "all", "--input", path("series/v4.json")});
    CHECK(all.code == cli::exit_violated);
    CHECK(all.json()["result"]["laws"].size() == all_laws().size());

    CHECK(run({"check-law", "--law", "Z", "--input", path("series/v4.json")}).code == cli::exit_malformed);
}

TEST_CASE("evaluate and laplace produce identical files")
{
    for (const auto *p : {"polygons/T.json", "polygons/unit_square.json", "polygons/hexagon.json"}) {
        const auto e = run({"evaluate", "--spec", path("specs/laplace.json"), "--polygon", path(p)});
        const auto l = run({"laplace", "--polygon", path(p)});
        CHECK(e.code == cli::exit_ok);
        CHECK(l.code == cli::exit_ok);
        CHECK(e.out == l.out);
        CHECK(io::series2_from_json(e.json()).order() == 11);
    }
    const auto lt = io::series2_from_json(run({"laplace", "--polygon", path("polygons/T.json"), "--order", "5"}).json());
    CHECK(lt.order() == 5);
    CHECK(lt.coeff(1, 1) == Rational(1, 24));
}

TEST_CASE("outputs are deterministic")
{
    const std::vector<std::string> args{"evaluate", "--spec", path("specs/cosh.json"), "--polygon",
                                        path("polygons/two_T.json")};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.out == b.out);
    CHECK(io::series2_from_json(a.json()).coeff(0, 0) == 3);
}

TEST_CASE("transform outputs round-trip as inputs")
{
    const auto sharp_out = scratch("sharp.json");
    CHECK(run({"transform", "--op", "sharp", "--input", path("series/v4.json"), "--out", sharp_out.string()}).code
          == cli::exit_ok);
    const auto back = run({"transform", "--op", "dagger", "--input", sharp_out.string()});
    CHECK(back.code == cli::exit_ok);
    const auto v4 = io::series2_from_json(io::read_file(path("series/v4.json")));
    CHECK(agree(io::series2_from_json(back.json()), v4));

    const auto st = scratch("st.json");
    CHECK(run({"transform", "--op", "to_st", "--input", path("series/v4.json"), "--out", st.string()}).code == 0);
    CHECK(agree(io::series2_from_json(run({"transform", "--op", "from_st", "--input", st.string()}).json()), v4));

    const auto d4 = run({"transform", "--op", "d4", "--input", path("series/v4.json")});
    CHECK(d4.code == cli::exit_ok);
    CHECK(d4.json().contains("weighted_order"));

    const auto aff = scratch("affine.json");
    io::write_file(aff, Json{{"m", {{0, 1}, {1, 0}}}, {"v", {1, 0}}});
    const auto acted = run({"transform", "--op", "act", "--affine", aff.string(), "--input", path("series/const1.json")});
    CHECK(acted.code == cli::exit_ok);
    CHECK(io::series2_from_json(acted.json()).coeff(3, 0) == Rational(1, 6));

    CHECK(run({"transform", "--op", "dagger", "--input", path("series/x.json")}).code == cli::exit_violated);
    CHECK(run({"transform", "--op", "nope", "--input", path("series/x.json")}).code == cli::exit_malformed);
}

TEST_CASE("construct writes triangle data")
{
    const auto out = scratch("td.json");
    const auto r = run({"construct", "--spec", path("specs/cosh.json"), "--out", out.string()});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.json()["artifacts"][0] == out.string());
    const auto td = io::read_file(out);
    CHECK(io::series2_from_json(td["zT"]).coeff(0, 0) == Rational(3, 2));
    CHECK(td["effective_order"] == 11);
}

TEST_CASE("spec files round-trip")
{
    const auto spec = io::spec_from_json(io::read_file(path("specs/odd_delta1.json")), 12);
    const auto again = io::spec_from_json(io::to_json(spec), 12);
    CHECK(again.c() == spec.c());
    CHECK(agree(again.g(), spec.g()));
    CHECK(agree(again.rho(), spec.rho()));
    CHECK(io::dump(io::to_json(again)) == io::dump(io::to_json(spec)));
}

TEST_CASE("working order from the environment")
{
    auto j = io::read_file(path("specs/laplace.json"));
    j.erase("order");
    const auto spec = scratch("no_order.json");
    io::write_file(spec, j);
    {
        EnvGuard env("8");
        const auto r = run({"evaluate", "--spec", spec.string(), "--polygon", path("polygons/T.json")});
        CHECK(r.code == cli::exit_ok);
        CHECK(io::series2_from_json(r.json()).order() == 7);
        CHECK(io::series2_from_json(run({"laplace", "--polygon", path("polygons/T.json")}).json()).order() == 7);
        // An explicit flag wins.
        const auto f = run({"--order", "6", "evaluate", "--spec", spec.string(), "--polygon", path("polygons/T.json")});
        CHECK(io::series2_from_json(f.json()).order() == 5);
    }
    {
        EnvGuard env("many");
        CHECK(run({"evaluate", "--spec", spec.string(), "--polygon", path("polygons/T.json")}).code
              == cli::exit_malformed);
    }
}

TEST_CASE("dilative")
{
    const auto ok = run({"dilative", "--spec", path("specs/v4.json"), "--delta", "2", "--polygons", path("polygons")});
    CHECK(ok.code == cli::exit_ok);
    CHECK(ok.json()["result"]["cases"].size() == 10);

    const auto bad = run({"dilative", "--spec", path("specs/v4.json"), "--delta", "3", "--m", "2"});
    CHECK(bad.code == cli::exit_violated);
    CHECK(bad.json()["first_violation"]["criterion"] == "dilative");

    const auto odd = run({"dilative", "--spec", path("specs/odd_delta1.json"), "--delta", "1", "--polygon",
                          path("segment.json"), "--polygon", path("polygons/trapezoid.json")});
    CHECK(odd.code == cli::exit_ok);

    CHECK(run({"dilative", "--spec", path("specs/v4.json"), "--delta", "2", "--m", "2,x"}).code == cli::exit_malformed);
}

TEST_CASE("decompose and calibrate")
{
    const auto autok = run({"decompose", "--spec", path("specs/cosh.json")});
    CHECK(autok.code == cli::exit_violated);
    CHECK(autok.json()["result"]["error"] == "NoCandidatePasses");

    const auto m1 = run({"decompose", "--spec", path("specs/cosh.json"), "--kappa", "-1"});
    CHECK(m1.code == cli::exit_ok);
    const auto j = m1.json();
    CHECK(j["alpha0"] == "1");
    REQUIRE(j["even_simple"].size() == 1);
    CHECK(j["even_simple"][0]["delta"] == -2);

    const auto solved = run({"decompose", "--spec", path("specs/cosh.json"), "--kappa", "solve"});
    CHECK(solved.code == cli::exit_ok);
    CHECK(solved.json()["kappa"] == "-1");

    const auto v4 = run({"decompose", "--spec", path("specs/v4.json"), "--kappa", "0"});
    CHECK(v4.code == cli::exit_ok);
    REQUIRE(v4.json()["even_simple"].size() == 1);
    CHECK(v4.json()["even_simple"][0]["delta"] == 2);

    CHECK(run({"decompose", "--spec", path("specs/cosh.json"), "--kappa", "2"}).code == cli::exit_malformed);

    const auto cal = run({"calibrate"});
    CHECK(cal.code == cli::exit_violated);
    const auto c = cal.json();
    CHECK(c["result"]["candidates"].size() == 2);
    CHECK(c["result"]["kappa"].is_null());
    CHECK(c["result"]["fit"]["admissible"] == true);
    CHECK(c["result"]["fit"]["dilative"] == true);
}

TEST_CASE("malformed input")
{
    CHECK(run({"check-law", "--law", "A", "--input", path("series/duplicate.json")}).code == cli::exit_malformed);
    CHECK(run({"check-law", "--law", "A", "--input", path("series/broken.json")}).code == cli::exit_malformed);
    CHECK(run({"check-law", "--law", "A", "--input", path("series/missing.json")}).code == cli::exit_malformed);
    CHECK(run({"--format", "xml", "vd", "dims"}).code == cli::exit_malformed);
    CHECK(run({"frobnicate"}).code == cli::exit_malformed);
    CHECK(run({}).code == cli::exit_malformed);

    const auto invalid = run({"evaluate", "--spec", path("specs/invalid_rho.json"), "--polygon", path("polygons/T.json")});
    CHECK(invalid.code == cli::exit_violated);
    CHECK(invalid.json()["status"] == "violated");

    const auto short_g = scratch("short_g.json");
    auto j = io::read_file(path("specs/cosh.json"));
    j["order"] = 20;
    io::write_file(short_g, j);
    CHECK(run({"evaluate", "--spec", short_g.string(), "--polygon", path("polygons/T.json")}).code
          == cli::exit_malformed);

    const auto help = run({"--help"});
    CHECK(help.code == cli::exit_ok);
    CHECK(help.out.find("evaluate") != std::string::npos);
}

TEST_CASE("table format")
{
    const auto r = run({"--format", "table", "vd", "basis", "--degree", "4"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.find("x^4 + 2 x^3 y") != std::string::npos);
    const auto st = run({"--format", "table", "vd", "basis", "--degree", "4", "--coords", "st"});
    CHECK(st.out.find("s^4") != std::string::npos);
}

TEST_CASE("selftest subset")
{
    const auto r = run({"--order", "8", "selftest", "--only", "1", "--only", "5"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.json()["result"]["criteria"].size() == 2);
}
