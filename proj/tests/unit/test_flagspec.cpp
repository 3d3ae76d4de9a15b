#include "doctest.h"

#include "triginv/errors.hpp"
#include "triginv/exalg.hpp"
#include "triginv/flagspec.hpp"

#include <algorithm>

using namespace triginv;

namespace {

TauPoly tp(const char* text, int n) { return parse_tau_poly(text, n); }

PolyOperator op_of(const char* model) { return PolyOperator::from_algebraic(gauge_operator(build_chart(model))); }

ParamBinding bind(std::initializer_list<std::pair<Param, Rational>> kv) { return ParamBinding(kv.begin(), kv.end()); }

TauPoly::Exponent ex(std::initializer_list<int> v)
{
    TauPoly::Exponent e{};
    int i = 0;
    for (int x : v)
        e[i++] = static_cast<std::uint8_t>(x);
    return e;
}

} // namespace

TEST_CASE("flag basis order and dimension")
{
    const FlagSpec f{{1, 2}, 4};
    const auto b = f.basis();
    CHECK(b.size() == 9);
    CHECK(b[0] == ex({0, 0}));
    CHECK(b[1] == ex({1, 0}));
    // degree 2 block: t2 before t1^2
    CHECK(b[2] == ex({0, 1}));
    CHECK(b[3] == ex({2, 0}));
    CHECK(FlagSpec{{1, 1, 1}, 3}.dimension() == 20);
    CHECK(FlagSpec{{1, 2}, -1}.dimension() == 0);
    CHECK_THROWS_AS(FlagSpec({{1, 0}, 2}).basis(), ArgumentError);
}

TEST_CASE("apply examples")
{
    const auto g2 = PolyOperator::from_algebraic(reference_table(ModelId::parse("G2")));
    CHECK(apply(g2, tp("t2", 2)) == tp("-(3(2mu + nu) + (1 + 2mu + 2nu) t2 + (nu/12) t1^2)", 2));
    CHECK(apply(g2, TauPoly(2)).is_zero());
    const auto a1 = op_of("A1");
    CHECK(apply(a1, tp("t1^2", 1)) == tp("(2 + 2nu) t1^2 - 4", 1));
    CHECK_THROWS_AS(apply(a1, tp("t1", 2)), ArgumentError);
}

TEST_CASE("compose")
{
    const auto d1 = PolyOperator::derivative(2, 0);
    const auto t1 = PolyOperator::multiplication(tp("t1", 2));
    CHECK(compose(d1, t1) - compose(t1, d1) == PolyOperator::identity(2));

    const auto g = hidden_generators("g2", 2, Rational(0));
    const auto& L1 = g[0].op;
    const auto& L2 = g[1].op;
    const auto& L5 = g[4].op;
    CHECK((compose(L1, L5) - compose(L5, L1)).is_zero());
    // L2 L1 = t1 d1 d1
    PolyOperator want(2);
    want.add_term(ex({2, 0}), tp("t1", 2));
    CHECK(compose(L2, L1) == want);

    // associativity on a few operators
    const auto a = op_of("G2");
    CHECK(compose(compose(a, L2), g[7].op) == compose(a, compose(L2, g[7].op)));
}

TEST_CASE("gl commutators close on the degree-preserving part")
{
    const auto gens = hidden_generators("gl", 2, Rational(3));
    auto find = [&](const std::string& name) {
        for (const auto& g : gens)
            if (g.name == name)
                return g.op;
        FAIL("missing generator " << name);
        return PolyOperator(2);
    };
    const auto j12 = find("J0_12"), j21 = find("J0_21"), j11 = find("J0_11"), j22 = find("J0_22");
    CHECK(compose(j12, j21) - compose(j21, j12) == j11 - j22);
    const auto jm1 = find("J-1"), jp1 = find("J+1");
    CHECK(jp1 == compose(PolyOperator::multiplication(tp("t1", 2)), find("J0")));
    // [J-_1, J+_1] = J0 + J0_11 with J0 = sum t d - n
    CHECK(compose(jm1, jp1) - compose(jp1, jm1) == find("J0") + j11);
}

TEST_CASE("generators")
{
    const auto gl = hidden_generators("gl", 2, Rational(3));
    bool found = false;
    for (const auto& g : gl)
        if (g.name == "J+1") {
            found = true;
            PolyOperator want(2);
            want.add_term(ex({1, 0}), tp("t1^2", 2));
            want.add_term(ex({0, 1}), tp("t1 t2", 2));
            want.add_term(ex({0, 0}), tp("-3 t1", 2));
            CHECK(g.op == want);
        }
    CHECK(found);

    const auto g2 = hidden_generators("g2", 2, Rational(0));
    REQUIRE(g2.size() == 8);
    CHECK(g2[1].op == PolyOperator::derivative(2, 0, tp("t1", 2)));
    CHECK(g2[2].op == PolyOperator::derivative(2, 1, tp("2 t2", 2)));
    PolyOperator t(2);
    t.add_term(ex({2, 0}), tp("t2", 2));
    CHECK(g2[7].op == t);
    CHECK_THROWS_AS(hidden_generators("so", 2, Rational(0)), ArgumentError);
}

TEST_CASE("flag preservation")
{
    const auto g2 = op_of("G2");
    CHECK(check_flag(g2, {1, 2}, 10).pass);
    const auto bad = check_flag(g2, {1, 1}, 4);
    CHECK(!bad.pass);
    CHECK(bad.witness == "t2^2");

    // the printed operator already leaves the (1,1) flag at t2
    const auto printed = check_flag(reference_table(ModelId::parse("G2")), {1, 1}, 4);
    CHECK(!printed.pass);
    CHECK(printed.witness == "t2");
    CHECK(printed.image_degree == 2);

    CHECK(check_flag(PolyOperator(3), {5, 1, 2}, 6).pass);
    for (const char* name : {"A3", "BC3"})
        CHECK(check_flag(op_of(name), {1, 1, 1}, 6).pass);
}

TEST_CASE("serial and parallel flag checks agree")
{
    const auto g2 = op_of("G2");
    for (const std::vector<int>& alpha : {std::vector<int>{1, 2}, std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
        const auto a = check_flag(g2, alpha, 8);
        const auto b = check_flag_serial(g2, alpha, 8);
        CHECK(a.pass == b.pass);
        CHECK(a.witness == b.witness);
        CHECK(a.offending_term == b.offending_term);
    }
}

TEST_CASE("minimal characteristic vectors")
{
    CHECK(min_charvector_search(op_of("G2"), 4, 6) == std::vector<int>{1, 2});
    CHECK(min_charvector_search(op_of("A3"), 4, 6) == std::vector<int>{1, 1, 1});
    CHECK(!min_charvector_search(op_of("G2"), 1, 4).has_value());
}

TEST_CASE("operator matrix")
{
    const auto a1 = op_of("A1");
    const auto m = operator_matrix(a1, {{1}, 2}, bind({{Param::Nu, Rational(1)}}));
    REQUIRE(m.rows() == 3);
    CHECK(m(0, 0) == 0);
    CHECK(m(1, 1) == make_rational(3, 2));
    CHECK(m(2, 2) == 4);
    CHECK(m(0, 2) == -4);
    CHECK(m(2, 0) == 0);

    const auto z = operator_matrix(op_of("G2"), {{1, 2}, 0}, bind({{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}}));
    REQUIRE(z.rows() == 1);
    CHECK(z(0, 0) == 0);

    CHECK_THROWS_AS(operator_matrix(a1, {{1}, 2}, {}), ArgumentError);

    const FlagSpec f{{1, 2}, 5};
    const auto binding = bind({{Param::Nu, make_rational(1, 3)}, {Param::Mu, Rational(2)}});
    const auto mp = operator_matrix(op_of("G2"), f, binding);
    CHECK(mp == operator_matrix_serial(op_of("G2"), f, binding));
    // block upper-triangular in the degree grading
    const auto basis = f.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (weighted_degree(basis[i], f.alpha) > weighted_degree(basis[j], f.alpha))
                CHECK(mp(i, j) == 0);
}

TEST_CASE("characteristic polynomial and rational roots")
{
    RationalMatrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 1) = make_rational(1, 2);
    const auto cp = characteristic_polynomial(m);
    CHECK(cp == std::vector<Rational>{Rational(1), make_rational(-5, 2), Rational(1)});
    int rest = -1;
    auto roots = rational_roots(cp, rest);
    std::sort(roots.begin(), roots.end());
    CHECK(rest == 0);
    CHECK(roots == std::vector<Rational>{make_rational(1, 2), Rational(2)});
    // x^2 - 2 has no rational roots
    rational_roots({Rational(-2), Rational(0), Rational(1)}, rest);
    CHECK(rest == 2);
}

TEST_CASE("A1 spectrum")
{
    const auto a1 = op_of("A1");
    for (const Rational& nu : {make_rational(1, 2), Rational(1), Rational(3)}) {
        const auto s = spectrum(a1, {{1}, 10}, bind({{Param::Nu, nu}}));
        REQUIRE(s.eigenpairs.size() == 11);
        CHECK(s.resonances.empty());
        for (const auto& e : s.eigenpairs) {
            const Rational n(e.degree);
            CHECK(e.value == n * n / 2 + nu * n);
            CHECK(!e.defective);
        }
    }
    const auto s = spectrum(a1, {{1}, 2}, bind({{Param::Nu, Rational(1)}}));
    REQUIRE(s.eigenpairs.size() == 3);
    CHECK(s.eigenpairs[0].poly == tp("1", 1));
    CHECK(s.eigenpairs[1].poly == tp("t1", 1));
    CHECK(s.eigenpairs[2].poly == tp("t1^2 - 1", 1));
}

TEST_CASE("G2 spectrum at n = 0")
{
    const auto s = spectrum(op_of("G2"), {{1, 2}, 0}, bind({{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}}));
    REQUIRE(s.eigenpairs.size() == 1);
    CHECK(s.eigenpairs[0].value == 0);
}

TEST_CASE("quadratic spectra and Jack invariance")
{
    struct Case {
        const char* model;
        std::vector<int> alpha;
    };
    for (const Case& c : {Case{"A2", {1, 1}}, Case{"G2", {1, 2}}}) {
        CAPTURE(c.model);
        auto chart = build_chart(c.model);
        const auto op = PolyOperator::from_algebraic(gauge_operator(chart));
        const auto s = spectrum(op, {c.alpha, 4}, bind({{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}}));
        CHECK(s.eigenpairs.size() == FlagSpec{c.alpha, 4}.dimension());
        std::vector<TauPoly::Exponent> q;
        std::vector<Rational> v;
        for (const auto& e : s.eigenpairs) {
            CHECK(is_weyl_invariant(expand_tau(chart, e.poly)));
            // eigen equation holds exactly
            CHECK(apply(op.substitute_params(bind({{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}})), e.poly) ==
                  e.poly.scaled(e.value));
            if (e.has_leading) {
                q.push_back(e.leading);
                v.push_back(e.value);
            }
        }
        CHECK(q.size() == s.eigenpairs.size());
        const auto fit = fit_quadratic(q, v, 2);
        CHECK(fit.exact);
        CHECK(fit.residual == 0);
    }
}

TEST_CASE("quadratic fit detects a non-quadratic sequence")
{
    std::vector<TauPoly::Exponent> q;
    std::vector<Rational> v;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            q.push_back(ex({a, b}));
            v.push_back(Rational(a * a * a + b));
        }
    const auto fit = fit_quadratic(q, v, 2);
    CHECK(!fit.exact);
    CHECK(fit.residual > 0);
}

TEST_CASE("invariant subspaces")
{
    CHECK(verify_invariant_subspace(hidden_generators("gl", 2, Rational(3)), {{1, 1}, 3}).pass);
    CHECK(verify_invariant_subspace(hidden_generators("g2", 2, Rational(4)), {{1, 2}, 4}).pass);
    const auto off = verify_invariant_subspace(hidden_generators("gl", 2, Rational(4)), {{1, 1}, 3});
    CHECK(!off.pass);
    CHECK(!off.witnesses.empty());
}

TEST_CASE("g2 decomposition")
{
    const auto target = gauge_operator(build_chart("G2"));
    const auto rep = verify_g2_decomposition(target);
    // the printed first-order coefficients do not reproduce the operator
    CHECK(!rep.pass);
    CHECK(rep.differences.size() == 2);
    CHECK(rep.second_order_match);
    CHECK(rep.refit_exists);
    CHECK(rep.l4_absent);
    const ParamScalar nu = ParamScalar::symbol(Param::Nu), mu = ParamScalar::symbol(Param::Mu);
    REQUIRE(rep.refit.size() == 7);
    CHECK(rep.refit[0].second == nu.scaled(Rational(-2)));
    CHECK(rep.refit[1].second == -(mu + nu.scaled(make_rational(2, 3))));
    CHECK(rep.refit[2].second == -(mu + nu.scaled(make_rational(1, 2))));
    CHECK(rep.refit[3].second.is_zero());
    CHECK(rep.refit[4].second == mu.scaled(Rational(-6)));
    CHECK(rep.refit[5].second == nu.scaled(Rational(-2)));
    CHECK(rep.refit[6].second.is_zero());

    // against the printed operator only the L3 coefficient is off (by -1/4)
    const auto printed = verify_g2_decomposition(reference_table(ModelId::parse("G2")));
    CHECK(!printed.pass);
    CHECK(printed.differences.size() == 1);
    REQUIRE(printed.refit_exists);
    CHECK(printed.refit[2].second == -(mu + nu));

    // coupling-free: the products alone give the pure-Laplacian operator
    const ParamBinding zero{{Param::Nu, Rational(0)}, {Param::Mu, Rational(0)}};
    CHECK(g2_decomposition_products() == PolyOperator::from_algebraic(target.substitute_params(zero)));
}

TEST_CASE("round trip through the algebraic form")
{
    const auto op = gauge_operator(build_chart("G2"));
    CHECK(diff_operators(to_algebraic(PolyOperator::from_algebraic(op), "G2"), op).empty());
    CHECK_THROWS_AS(to_algebraic(compose(op_of("G2"), op_of("G2")), "G2"), ArgumentError);
}
