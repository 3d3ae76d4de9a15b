// Serial reference vs OpenMP kernel for each parallel hot spot.

#include "triginv/exalg.hpp"
#include "triginv/flagspec.hpp"
#include "triginv/gaugeform.hpp"
#include "triginv/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace triginv;

namespace {

const ParamValues kParams{{Param::Nu, 0.7}, {Param::Mu, 1.3}};

void orbit(benchmark::State& st, bool serial)
{
    auto chart = build_chart("E6");
    const Weight w = chart->fundamental_weight(5);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? weyl_orbit_weights_serial(*chart, w) : weyl_orbit_weights(*chart, w));
}

void product(benchmark::State& st, bool serial)
{
    auto chart = build_chart("E6");
    const ExpSum f = orbit_sum(chart, 5), g = orbit_sum(chart, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? mul_serial(f, g) : mul(f, g));
}

void gradient(benchmark::State& st, bool serial)
{
    auto chart = build_chart("E6");
    const ExpSum f = orbit_sum(chart, 5), g = orbit_sum(chart, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? grad_pair_serial(f, g) : grad_pair(f, g));
}

void monomial(benchmark::State& st, bool serial)
{
    auto chart = build_chart("F4");
    TauPoly::Exponent m{};
    m[0] = 2;
    m[3] = 1;
    for (auto _ : st) {
        st.PauseTiming();
        clear_expansion_cache();
        st.ResumeTiming();
        benchmark::DoNotOptimize(serial ? expand_monomial_orbit_serial(chart, m) : expand_monomial_orbit(chart, m));
    }
}

void gauge(benchmark::State& st, bool serial)
{
    auto chart = build_chart("F4");
    for (auto _ : st) {
        st.PauseTiming();
        clear_expansion_cache();
        st.ResumeTiming();
        benchmark::DoNotOptimize(serial ? gauge_operator_serial(chart) : gauge_operator(chart));
    }
}

void trials(benchmark::State& st, bool serial)
{
    auto chart = build_chart("G2");
    const auto op = gauge_operator(chart);
    const auto pv = complete_params(*chart, kParams);
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? compare_operator_numeric_serial(chart, op, pv, 20, 7, 1e-3, 1e-7)
                                        : compare_operator_numeric(chart, op, pv, 20, 7, 1e-3, 1e-7));
}

void matrix(benchmark::State& st, bool serial)
{
    auto chart = build_chart("G2");
    const auto op = PolyOperator::from_algebraic(gauge_operator(chart));
    const FlagSpec flag{chart->char_vector(), 8};
    const ParamBinding b{{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}};
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? operator_matrix_serial(op, flag, b) : operator_matrix(op, flag, b));
}

void flag(benchmark::State& st, bool serial)
{
    auto chart = build_chart("F4");
    const auto op = PolyOperator::from_algebraic(gauge_operator(chart));
    for (auto _ : st)
        benchmark::DoNotOptimize(serial ? check_flag_serial(op, chart->char_vector(), 6)
                                        : check_flag(op, chart->char_vector(), 6));
}

} // namespace

BENCHMARK_CAPTURE(orbit, serial, true)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(orbit, parallel, false)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(product, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(product, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gradient, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gradient, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monomial, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monomial, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gauge, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gauge, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(trials, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(trials, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(matrix, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(matrix, parallel, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(flag, serial, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(flag, parallel, false)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
