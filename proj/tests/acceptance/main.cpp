#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#include <latval/selftest.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance criteria"};
    latval::selftest::Options opts;
    std::vector<int> only;
    app.add_option("--order", opts.order, "working order N")->check(CLI::Range(4, 40));
    app.add_option("--seed", opts.seed, "seed for the random corpora");
    app.add_option("--only", only, "criteria to run")->check(CLI::Range(1, latval::selftest::criterion_count));
    CLI11_PARSE(app, argc, argv);

    if (only.empty()) {
        for (int id = 1; id <= latval::selftest::criterion_count; ++id) {
            only.push_back(id);
        }
    }
    int failed = 0;
    for (const int id : only) {
        const auto r = latval::selftest::run_criterion(id, opts);
        std::printf("%s %2d %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
    return failed == 0 ? 0 : 1;
}
