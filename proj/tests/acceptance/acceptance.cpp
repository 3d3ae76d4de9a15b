// One line per acceptance criterion; exit status 1 if any line is FAIL.

#include "errata.hpp"

#include "triginv/exalg.hpp"
#include "triginv/flagspec.hpp"
#include "triginv/gaugeform.hpp"
#include "triginv/oracle.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace triginv;

namespace {

const ParamValues kParams{{Param::Nu, 0.7}, {Param::Mu, 1.3}, {Param::Nu2, 0.4}, {Param::Nu3, 0.9}};
constexpr double kOracleTol = 1e-7;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string sci(double x)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(1) << x;
    return os.str();
}

std::string vec(const std::vector<int>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

ParamValues values(const ChartPtr& chart) { return complete_params(*chart, kParams); }

void tables(Outcome& o, const cli::Errata& errata)
{
    std::string exact, adjudicated;
    for (const char* name : {"A2", "A3", "BC2", "BC3", "BC4", "G2", "F4", "E6"}) {
        auto chart = build_chart(name);
        const auto op = gauge_operator(chart);
        const auto ref = reference_table(chart->id());
        const auto ms = diff_operators(op, ref);
        if (ms.empty()) {
            exact += std::string(exact.empty() ? "" : " ") + name;
            continue;
        }
        const double mine =
            compare_operator_numeric(chart, op, values(chart), 20, kSeed, 1e-3, kOracleTol).max_rel_dev;
        const double theirs =
            compare_operator_numeric(chart, ref, values(chart), 20, kSeed, 1e-3, kOracleTol).max_rel_dev;
        o.require(mine <= kOracleTol, std::string(name) + " computed operator rejected by the oracle");
        o.require(theirs > kOracleTol, std::string(name) + " oracle cannot separate the tables");
        std::string labels;
        for (const auto& m : ms) {
            const std::string l = mismatch_label(m);
            labels += (labels.empty() ? "" : ",") + l;
            o.require(errata.find(name, "operator", l).has_value(), std::string(name) + " " + l + " not in errata");
        }
        adjudicated += std::string(adjudicated.empty() ? "" : "; ") + name + " " + labels + " (oracle dev " +
                       sci(mine) + " vs printed " + sci(theirs) + ")";
    }
    o.detail << "exact: " << exact << "; adjudicated errata: " << adjudicated;
}

void orbits(Outcome& o)
{
    auto sizes = [](const char* name) {
        auto chart = build_chart(name);
        std::vector<int> out;
        for (int a = 0; a < chart->rank(); ++a)
            out.push_back(static_cast<int>(chart->fundamental_orbit(static_cast<std::size_t>(a)).size()));
        return out;
    };
    const auto f4 = sizes("F4"), e6 = sizes("E6");
    o.require(f4 == std::vector<int>{24, 24, 96, 96}, "F4 orbit sizes");
    o.require(e6 == std::vector<int>{27, 27, 216, 216, 72, 720}, "E6 orbit sizes");
    const auto wg = weyl_group_order(*build_chart("G2")), wf = weyl_group_order(*build_chart("F4")),
               we = weyl_group_order(*build_chart("E6"));
    o.require(wg == 12 && wf == 1152 && we == 51840, "Weyl orders");
    o.detail << "F4 " << vec(f4) << ", E6 " << vec(e6) << ", |W| " << wg << "/" << wf << "/" << we;
}

void eta(Outcome& o, const cli::Errata& errata)
{
    for (const char* name : {"A3", "C3", "G2", "F4"}) {
        int ok = 0, total = 0;
        bool rescaled = false;
        for (const auto& c : eta_tau_relations(build_chart(name))) {
            ++total;
            ok += c.pass;
            rescaled = rescaled || c.note.find("off by") != std::string::npos;
            o.require(c.pass, std::string(name) + " " + c.name);
        }
        o.detail << name << " " << ok << "/" << total;
        if (rescaled) {
            const auto e = errata.find(name, "eta_tau");
            o.require(e.has_value(), std::string(name) + " rescaling not in errata");
            o.detail << " (beta^-d read as (beta/2)^-d, erratum " << (e ? e->id : "missing") << ")";
        }
        o.detail << "; ";
    }
}

void energies(Outcome& o)
{
    const ParamScalar nu = ParamScalar::symbol(Param::Nu), mu = ParamScalar::symbol(Param::Mu);
    const auto f4 = ground_state_energy(*build_chart("F4"));
    const auto e6 = ground_state_energy(*build_chart("E6"));
    o.require(f4 == nu * nu * ParamScalar(7) + mu * mu * ParamScalar(14) + nu * mu * ParamScalar(18), "F4 E0");
    o.require(e6 == nu * nu * ParamScalar(39), "E6 E0");
    double worst = 0;
    for (const char* name : {"A1", "A2", "A3", "BC2", "BC3", "BC4", "G2", "F4", "E6"}) {
        auto chart = build_chart(name);
        std::mt19937_64 rng(kSeed);
        for (int i = 0; i < 10; ++i)
            worst = std::max(worst, std::abs(eval_gauge_apply(chart, values(chart),
                                                              TauPoly::constant(chart->rank(), ParamScalar(1)),
                                                              random_admissible_point(*chart, rng))));
    }
    o.require(worst <= 1e-8, "numeric E0 cancellation");
    o.detail << "F4 " << f4.to_string() << ", E6 " << e6.to_string() << "; max |h 1| over 9 models x 10 points "
             << sci(worst);
}

void flags(Outcome& o)
{
    struct Case {
        const char* model;
        int n;
    };
    for (const Case& c : {Case{"A3", 6}, Case{"BC3", 6}, Case{"G2", 10}, Case{"F4", 6}, Case{"E6", 4}}) {
        auto chart = build_chart(c.model);
        const auto op = PolyOperator::from_algebraic(gauge_operator(chart));
        const auto& alpha = chart->char_vector();
        o.require(check_flag(op, alpha, c.n).pass, std::string(c.model) + " flag");
        const auto found = min_charvector_search(op, 4, std::min(c.n, 6));
        o.require(found && *found == alpha, std::string(c.model) + " minimal vector");
        o.detail << c.model << " " << vec(alpha) << " n<=" << c.n << " min " << (found ? vec(*found) : "none")
                 << "; ";
    }
}

void spectra(Outcome& o)
{
    int a1 = 0;
    const auto a1op = PolyOperator::from_algebraic(gauge_operator(build_chart("A1")));
    for (const Rational& nu : {make_rational(1, 2), Rational(1), Rational(3)}) {
        const auto s = spectrum(a1op, {{1}, 10}, {{Param::Nu, nu}});
        o.require(s.eigenpairs.size() == 11, "A1 eigenpair count");
        for (const auto& e : s.eigenpairs) {
            const Rational n(e.degree);
            o.require(e.value == n * n / 2 + nu * n, "A1 eigenvalue");
            ++a1;
        }
    }
    o.detail << "A1 " << a1 << " eigenvalues = n^2/2 + nu n; ";
    for (const char* name : {"A2", "G2"}) {
        auto chart = build_chart(name);
        const auto op = PolyOperator::from_algebraic(gauge_operator(chart));
        const FlagSpec flag{chart->char_vector(), 4};
        const auto s = spectrum(op, flag, {{Param::Nu, Rational(1)}, {Param::Mu, Rational(1)}});
        std::vector<TauPoly::Exponent> q;
        std::vector<Rational> v;
        bool invariant = true;
        for (const auto& e : s.eigenpairs) {
            invariant = invariant && is_weyl_invariant(expand_tau(chart, e.poly));
            if (e.has_leading) {
                q.push_back(e.leading);
                v.push_back(e.value);
            }
        }
        o.require(s.eigenpairs.size() == flag.dimension() && q.size() == s.eigenpairs.size(),
                  std::string(name) + " eigenpairs");
        const auto fit = fit_quadratic(q, v, chart->rank());
        o.require(fit.exact && fit.residual == 0, std::string(name) + " quadratic fit");
        o.require(invariant, std::string(name) + " Weyl invariance");
        o.detail << name << " " << s.eigenpairs.size() << " pairs, fit " << fit.formula << ", residual "
                 << fit.residual.get_str() << ", Weyl-invariant " << (invariant ? "yes" : "no") << "; ";
    }
}

void hidden(Outcome& o, const cli::Errata& errata)
{
    auto chart = build_chart("G2");
    const auto op = gauge_operator(chart);
    const auto rep = verify_g2_decomposition(op);
    o.require(rep.second_order_match, "second-order part");
    o.require(rep.l4_absent, "L4 absent");
    if (rep.pass) {
        o.detail << "printed combination exact; ";
    } else {
        // every differing coefficient must be adjudicated: the literal combination
        // is rejected by the oracle, the refit (= computed operator) accepted
        o.require(rep.refit_exists, "first-order refit");
        const auto literal = to_algebraic(rep.combination, "G2");
        const double dev =
            compare_operator_numeric(chart, literal, values(chart), 20, kSeed, 1e-3, kOracleTol).max_rel_dev;
        const double mine =
            compare_operator_numeric(chart, op, values(chart), 20, kSeed, 1e-3, kOracleTol).max_rel_dev;
        o.require(dev > kOracleTol && mine <= kOracleTol, "oracle adjudication");
        const auto e = errata.find("G2", "decomposition");
        o.require(e.has_value(), "decomposition erratum logged");
        o.detail << "literal printed combination differs in " << rep.differences.size()
                 << " coefficients (oracle dev " << sci(dev) << " vs computed " << sci(mine)
                 << "); second-order part exact; first-order part " << rep.refit_text << "; erratum "
                 << (e ? e->id : "missing") << "; ";
    }
    const bool gl = verify_invariant_subspace(hidden_generators("gl", 2, Rational(3)), {{1, 1}, 3}).pass;
    const bool g2 = verify_invariant_subspace(hidden_generators("g2", 2, Rational(4)), {{1, 2}, 4}).pass;
    o.require(gl && g2, "invariant subspaces");
    o.detail << "L4 absent; gl n=3 " << (gl ? "invariant" : "not invariant") << ", g2 n=4 "
             << (g2 ? "invariant" : "not invariant");
}

void involution(Outcome& o)
{
    const auto id = ModelId::parse("E6");
    int ok = 0, total = 0;
    for (const auto& p : involution_check(id, reference_table(id))) {
        ++total;
        ok += p.pass;
    }
    int ok_c = 0;
    for (const auto& p : involution_check(id, gauge_operator(build_chart("E6"))))
        ok_c += p.pass;
    o.require(ok == total && ok_c == total, "pairings");
    o.detail << "printed " << ok << "/" << total << ", computed " << ok_c << "/" << total << " pairings";
}

void flatness(Outcome& o)
{
    for (const char* name : {"G2", "BC2"}) {
        auto chart = build_chart(name);
        const auto rep = curvature_check(gauge_operator(chart), values(chart), random_tau_points(chart, 5, kSeed));
        o.require(rep.points_used == 5 && rep.max_abs < 1e-5, std::string(name) + " curvature");
        o.detail << name << " max|R| " << sci(rep.max_abs) << " (" << rep.points_used << " points, cond(A) <= "
                 << sci(rep.max_condition) << "); ";
    }
    auto g2 = build_chart("G2");
    const auto c = convergence_order(g2, gauge_operator(g2), values(g2), kSeed, 0.1);
    o.require(c.order >= 5.5, "G2 convergence order");
    o.detail << "G2 FD order " << std::fixed << std::setprecision(2) << c.order << " (h = 0.1/0.05)";
}

void convergence(Outcome& o)
{
    auto a2 = build_chart("A2");
    const auto c = convergence_order(a2, gauge_operator(a2), values(a2), kSeed, 0.1);
    o.require(c.ratio >= 32, "A2 ratio");
    o.detail << "A2 dev " << sci(c.dev_h) << " -> " << sci(c.dev_half) << ", ratio " << std::fixed
             << std::setprecision(1) << c.ratio << ", order " << std::setprecision(2) << c.order;
}

} // namespace

int main()
{
    cli::Errata errata;
    try {
        errata = cli::Errata::load(cli::Errata::default_file());
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "table reproduction", [&](Outcome& o) { tables(o, errata); }},
        {2, "orbit and Weyl group sizes", orbits},
        {3, "eta-tau identities", [&](Outcome& o) { eta(o, errata); }},
        {4, "ground-state energies", energies},
        {5, "flag preservation", flags},
        {6, "spectra", spectra},
        {7, "hidden algebra", [&](Outcome& o) { hidden(o, errata); }},
        {8, "E6 involution", involution},
        {9, "flatness", flatness},
        {10, "oracle convergence", convergence},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::string detail = o.detail.str();
        while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';'))
            detail.pop_back();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << ": " << detail
                  << " [" << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
