#ifndef LATVAL_SELFTEST_HPP
#define LATVAL_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <latval/lattice_geom.hpp>
#include <latval/valuation.hpp>

namespace latval::selftest
{

struct Options {
    // Working order N; comparisons are exact up to N - 1.
    int order = 12;
    std::uint64_t seed = 20240607;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    // One line: what was checked, or the first thing that went wrong.
    std::string detail;
    double seconds = 0;
};

inline constexpr int criterion_count = 10;

CriterionResult run_criterion(int id, const Options &opts);
std::vector<CriterionResult> run_all(const Options &opts);

// Shared fixtures.
std::vector<LatticePolygon> polygon_corpus(std::uint64_t seed);

struct NamedSpec {
    std::string name;
    ValuationSpec spec;
};

// rho = 1, the degree 4 and 6 basis elements, the delta = 1 odd spec and
// (1, cosh_series, 0).
std::vector<NamedSpec> spec_corpus(int order);

} // namespace latval::selftest

#endif
