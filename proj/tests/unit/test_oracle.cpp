#include "doctest.h"

#include "triginv/errors.hpp"
#include "triginv/oracle.hpp"

#include <cmath>

using namespace triginv;

namespace {

const ParamValues kParams{{Param::Nu, 0.7}, {Param::Mu, 1.3}, {Param::Nu2, 0.4}, {Param::Nu3, 0.9}};

TauPoly tp(const char* text, int n) { return parse_tau_poly(text, n); }

} // namespace

TEST_CASE("fti evaluation matches the orbit sums")
{
    auto chart = build_chart("G2");
    std::mt19937_64 rng(1);
    const EvalPoint pt = random_admissible_point(*chart, rng);
    CHECK(min_root_sine(*chart, pt) > 0.1);
    const auto tau = eval_fti(chart, pt);
    REQUIRE(tau.size() == 2);
    const ParamValues none;
    CHECK(std::abs(tau[0] - orbit_sum(chart, 0).evaluate(pt.y, none)) < 1e-12);
    CHECK(std::abs(tau[1] - orbit_sum(chart, 1).evaluate(pt.y, none)) < 1e-12);
    // real-valued since orbits are closed under negation
    CHECK(std::abs(tau[0].imag()) < 1e-12);
}

TEST_CASE("missing couplings are rejected")
{
    auto chart = build_chart("BC2");
    CHECK_THROWS_AS(complete_params(*chart, {{Param::Nu, 1.0}}), ArgumentError);
    CHECK(complete_params(*build_chart("B2"), {{Param::Nu, 1.0}, {Param::Nu3, 2.0}}).size() >= 2);
}

TEST_CASE("evaluation at a root zero throws")
{
    auto chart = build_chart("A1");
    const EvalPoint at_zero{std::vector<double>(static_cast<std::size_t>(chart->ambient_dim()), 0.0)};
    CHECK_THROWS_AS(eval_gauge_apply(chart, complete_params(*chart, kParams), TauPoly::constant(1, 1), at_zero),
                    EvaluationError);
}

TEST_CASE("ground-state energy cancels numerically")
{
    for (const char* name : {"A2", "BC2", "G2"}) {
        CAPTURE(name);
        auto chart = build_chart(name);
        const ParamValues p = complete_params(*chart, kParams);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 5; ++i) {
            const auto v = eval_gauge_apply(chart, p, TauPoly::constant(chart->rank(), 1),
                                            random_admissible_point(*chart, rng));
            CHECK(std::abs(v) < 1e-8);
        }
    }
}

TEST_CASE("oracle accepts the gauge operator and rejects a perturbed one")
{
    auto chart = build_chart("A2");
    const ParamValues p = complete_params(*chart, kParams);
    const auto op = gauge_operator(chart);
    const auto good = compare_operator_numeric(chart, op, p, 20, 7);
    CHECK(good.failures.empty());
    CHECK(good.max_rel_dev < 1e-7);

    auto bad = op;
    bad.B[0] += tp("t1", 2);
    const auto rep = compare_operator_numeric(chart, bad, p, 20, 7);
    CHECK(!rep.failures.empty());
    CHECK(rep.max_rel_dev > 1e-3);
}

TEST_CASE("oracle sides with the computed G2 operator")
{
    auto chart = build_chart("G2");
    const ParamValues p = complete_params(*chart, kParams);
    CHECK(compare_operator_numeric(chart, gauge_operator(chart), p, 20, 7).max_rel_dev < 1e-7);
    CHECK(compare_operator_numeric(chart, reference_table(chart->id()), p, 20, 7).max_rel_dev > 1e-2);
}

TEST_CASE("serial and parallel oracle runs agree")
{
    auto chart = build_chart("BC2");
    const ParamValues p = complete_params(*chart, kParams);
    const auto op = gauge_operator(chart);
    const auto a = compare_operator_numeric(chart, op, p, 12, 42);
    const auto b = compare_operator_numeric_serial(chart, op, p, 12, 42);
    CHECK(a.max_rel_dev == b.max_rel_dev);
    CHECK(a.failures.size() == b.failures.size());
}

TEST_CASE("order-6 convergence on A2")
{
    auto chart = build_chart("A2");
    const auto c = convergence_order(chart, gauge_operator(chart), complete_params(*chart, kParams), 11, 0.1);
    CHECK(c.ratio >= 32);
    CHECK(c.order >= 5.5);
}

TEST_CASE("curvature control cases")
{
    const std::vector<ComplexVector> pts{{{0.3, 0}, {-0.4, 0}}, {{1.1, 0}, {0.2, 0}}, {{-0.7, 0}, {0.9, 0}}};

    auto flat = AlgebraicOperator::zero("X", 2);
    flat.A[0][0] = TauPoly::constant(2, 1);
    flat.A[1][1] = TauPoly::constant(2, 2);
    flat.A[0][1] = flat.A[1][0] = TauPoly::constant(2, make_rational(1, 2));
    CHECK(curvature_check(flat, {}, pts).max_abs < 1e-9);

    // contravariant (1 + t1^2) delta: conformal factor with nonzero Gaussian curvature
    auto curved = AlgebraicOperator::zero("X", 2);
    curved.A[0][0] = tp("1 + t1^2", 2);
    curved.A[1][1] = tp("1 + t1^2", 2);
    const auto rep = curvature_check(curved, {}, pts);
    CHECK(rep.points_used == 3);
    CHECK(rep.max_abs > 1e-2);

    auto singular = AlgebraicOperator::zero("X", 2);
    singular.A[0][0] = tp("t1", 2);
    const auto srep = curvature_check(singular, {}, pts);
    CHECK(srep.points_used == 0);
    CHECK(!srep.notices.empty());
}

TEST_CASE("curvature at a badly conditioned G2 point")
{
    // seed 7 draws a point where cond(A) is about 1e5; the exact Riemann
    // tensor vanishes there, so what is left is roundoff
    auto chart = build_chart("G2");
    const auto rep = curvature_check(gauge_operator(chart), complete_params(*chart, kParams),
                                     random_tau_points(chart, 5, 7));
    CHECK(rep.points_used == 5);
    CHECK(rep.max_condition > 1e4);
    CHECK(rep.max_abs < 1e-5);
}

TEST_CASE("gauge operators are flat")
{
    for (const char* name : {"A2", "BC2", "G2"}) {
        CAPTURE(name);
        auto chart = build_chart(name);
        const auto rep = curvature_check(gauge_operator(chart), complete_params(*chart, kParams),
                                         random_tau_points(chart, 5, 5));
        CHECK(rep.points_used == 5);
        CHECK(rep.max_abs < 1e-5);
    }
}
