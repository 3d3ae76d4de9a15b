#include "doctest.h"

#include "triginv/errors.hpp"
#include "triginv/exalg.hpp"

using namespace triginv;

namespace {

TauPoly tp(const char* text, int n) { return parse_tau_poly(text, n); }

} // namespace

TEST_CASE("polynomial parser")
{
    const TauPoly p = tp("4 + t1 + t2/3 - t1^2/3", 2);
    CHECK(p.terms().size() == 4);
    CHECK(p == tp("-(1/3)*t1*t1 + 1/3 t2 + t1 + 4", 2));
    CHECK(tp("(1-nu)*(t1+1)", 1) == tp("t1 + 1 - nu*t1 - nu", 1));
    CHECK_THROWS_AS(tp("t3", 2), ArgumentError);
    CHECK_THROWS_AS(tp("t1/t2", 2), ArgumentError);
}

TEST_CASE("orbit sums and products")
{
    auto g2 = build_chart("G2");
    CHECK(orbit_sum(g2, 0).size() == 6);
    CHECK(orbit_sum(g2, 1).size() == 6);
    const ExpSum t1 = orbit_sum(g2, 0);
    CHECK(mul(t1, ExpSum(g2)).is_zero());
    CHECK(mul(t1, t1) == mul_serial(t1, t1));
    CHECK(is_weyl_invariant(mul(t1, orbit_sum(g2, 1))));

    auto a1 = build_chart("A1");
    ExpSum e(a1);
    const Weight w = a1->fundamental_weight(0);
    e.add(w, ParamScalar(1));
    e.add(-w, ParamScalar(1));
    const ExpSum sq = mul(e, e);
    CHECK(sq.size() == 3);
    CHECK(sq.coefficient(Weight{}) == ParamScalar(2));
    CHECK(sq.coefficient(w + w) == ParamScalar(1));
}

TEST_CASE("grad pair sign and laplacian")
{
    auto a1 = build_chart("A1");
    const Weight w = a1->fundamental_weight(0);
    ExpSum p(a1), m(a1);
    p.add(w, ParamScalar(1));
    m.add(-w, ParamScalar(1));
    const ExpSum g = grad_pair(p, m);
    CHECK(g.size() == 1);
    CHECK(g.coefficient(Weight{}) == ParamScalar(a1->pair(w, w)));
    CHECK(grad_pair(p, constant_sum(a1, ParamScalar(5))).is_zero());

    auto e6 = build_chart("E6");
    const ExpSum t1 = orbit_sum(e6, 0);
    CHECK(laplacian(t1) == t1.scaled(Rational(-4, 3)));
    auto f4 = build_chart("F4");
    const ExpSum t3 = orbit_sum(f4, 2);
    CHECK(grad_pair(t3, t3) == grad_pair_serial(t3, t3));
}

TEST_CASE("cot multiplication identity")
{
    auto a1 = build_chart("A1");
    const Weight alpha = a1->positive_roots()[0].weight;
    ExpSum f(a1);
    f.add(alpha, ParamScalar(1));
    f.add(-alpha, ParamScalar(-1));
    const ExpSum r = cot_mul(f, 0);
    const ParamScalar i = ParamScalar::imag_unit();
    CHECK(r.size() == 3);
    CHECK(r.coefficient(alpha) == i);
    CHECK(r.coefficient(Weight{}) == i.scaled(Rational(2)));
    CHECK(r.coefficient(-alpha) == i);
    CHECK(cot_mul(ExpSum(a1), 0).is_zero());

    ExpSum bad(a1);
    bad.add(alpha, ParamScalar(1));
    CHECK_THROWS_AS(cot_mul(bad, 0), NotCotMultiplicableError);
}

TEST_CASE("to_tau inverts expand_tau")
{
    for (const char* name : {"A2", "BC3", "G2", "F4"}) {
        auto chart = build_chart(name);
        const int r = chart->rank();
        CAPTURE(name);
        for (int a = 0; a < r; ++a)
            CHECK(to_tau(orbit_sum(chart, a)) == TauPoly::variable(r, a));
        TauPoly p = TauPoly::constant(r, ParamScalar(3));
        p += TauPoly::variable(r, 0) * TauPoly::variable(r, r - 1);
        p += TauPoly::variable(r, 0).scaled(ParamScalar::symbol(Param::Nu));
        const ExpSum f = expand_tau(chart, p);
        CHECK(is_weyl_invariant(f));
        CHECK(to_tau(f) == p);
        CHECK(to_tau(mul(orbit_sum(chart, 0), orbit_sum(chart, r - 1))) ==
              TauPoly::variable(r, 0) * TauPoly::variable(r, r - 1));
    }
}

TEST_CASE("serial and memoized monomial expansions agree")
{
    auto e6 = build_chart("E6");
    TauPoly::Exponent m{};
    m[0] = 2;
    m[1] = 1;
    m[4] = 1;
    CHECK(*expand_monomial_orbit(e6, m) == *expand_monomial_orbit_serial(e6, m));
    // leading orbit of tau^m is sum m_a w_a with coefficient 1
    Weight lead;
    lead[0] = 2;
    lead[1] = 1;
    lead[4] = 1;
    bool found = false;
    for (const auto& [nu, k] : *expand_monomial_orbit(e6, m))
        if (nu == lead) {
            found = true;
            CHECK(k == 1);
        }
    CHECK(found);
}

TEST_CASE("non-invariant input is rejected")
{
    auto g2 = build_chart("G2");
    ExpSum f(g2);
    f.add(g2->fundamental_weight(0), ParamScalar(1));
    CHECK_THROWS_AS(to_tau(f), NotInvariantError);
}

TEST_CASE("G2 eta2 relation")
{
    // eta2 = 4[sin(y1-y2) + sin(y2-y3) + sin(y3-y1)]^2 equals 4 tau2 - tau1^2 + 12
    auto g2 = build_chart("G2");
    ExpSum s(g2);
    const ParamScalar half_i = ParamScalar::imag_unit().scaled(Rational(-1, 2));
    const std::vector<CoordVector> diffs = {{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}};
    for (const auto& d : diffs) {
        const Weight w = g2->to_weight(d);
        s.add(w, half_i);
        s.add(-w, -half_i);
    }
    const ExpSum eta2 = mul(s, s).scaled(Rational(4));
    CHECK(to_tau(eta2) == tp("4*t2 - t1^2 + 12", 2));
}
