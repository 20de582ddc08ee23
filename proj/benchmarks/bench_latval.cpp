#include <benchmark/benchmark.h>

#include <latval/laplace.hpp>
#include <latval/laws.hpp>
#include <latval/valuation.hpp>
#include <latval/vspace.hpp>

using namespace latval;

namespace
{

Series2 dense_series(int order)
{
    Series2::Terms t;
    for (int d = 0; d <= order; ++d) {
        for (int q = 0; q <= d; ++q) {
            t.emplace(Exponent{d - q, q}, Rational(d + 1, q + 2));
        }
    }
    for (auto &[e, c] : t) {
        c.canonicalize();
    }
    return Series2(order, std::move(t));
}

void series_multiply(benchmark::State &state)
{
    const auto f = dense_series(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(f * f);
    }
}
BENCHMARK(series_multiply)->Arg(8)->Arg(12)->Arg(16);

void sharp_dagger(benchmark::State &state)
{
    const auto f = dense_series(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dagger(sharp(f)));
    }
}
BENCHMARK(sharp_dagger)->Arg(8)->Arg(12);

void vd_kernel(benchmark::State &state)
{
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(vd_basis(d));
    }
}
BENCHMARK(vd_kernel)->Arg(12)->Arg(24)->Arg(30);

void triangle_data(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const ValuationSpec spec(1, cosh_series(n / 2), Series2::constant(-1, n), n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_triangle_data(spec));
    }
}
BENCHMARK(triangle_data)->Arg(8)->Arg(12);

void evaluate_dilated_triangle(benchmark::State &state)
{
    const ValuationSpec spec(1, cosh_series(6), Series2::constant(-1, 12), 12);
    const auto data = build_triangle_data(spec);
    const auto p = dilate(standard_triangle(), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(z_polygon(spec, data, p));
    }
}
BENCHMARK(evaluate_dilated_triangle)->Arg(1)->Arg(2)->Arg(4);

void laplace_oracle(benchmark::State &state)
{
    const auto p = dilate(standard_triangle(), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplace_plus(p, 11));
    }
}
BENCHMARK(laplace_oracle)->Arg(1)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
