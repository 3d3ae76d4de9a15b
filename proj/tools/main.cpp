#include "errata.hpp"
#include "orbit_cache.hpp"
#include "serialize.hpp"
#include "verify.hpp"

#include "triginv/errors.hpp"
#include "triginv/flagspec.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

using namespace triginv;
using namespace triginv::cli;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string model;
    std::string params_text;
    int n = -1;
    std::string alpha_text;
    std::string format = "json";
    std::string cache_dir;
    std::uint64_t seed = 7;
    bool seed_given = false;
    bool strict = false;
    // command-specific
    int trials = 20;
    int points = 5;
    int search_bound = 0;
    std::string errata_file;

    ChartPtr chart;
    ParamBinding params;
    std::vector<int> alpha;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ParamBinding parse_params(const std::string& text, const ModelChart& chart)
{
    ParamBinding out;
    if (text.empty())
        return out;
    const auto active = chart.active_symbols();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("--params expects k=v pairs, got '" + item + "'");
        const auto p = parse_param(item.substr(0, eq));
        if (!p)
            throw UsageError("unknown coupling '" + item.substr(0, eq) + "' (nu, mu, nu2, nu3)");
        const bool pinned = std::find(chart.pinned_symbols().begin(), chart.pinned_symbols().end(), *p) !=
                            chart.pinned_symbols().end();
        if (std::find(active.begin(), active.end(), *p) == active.end() && !pinned)
            throw UsageError(std::string("model ") + chart.name() + " has no coupling " + param_name(*p));
        try {
            out[*p] = parse_rational(item.substr(eq + 1));
        } catch (const ArgumentError& e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

std::vector<int> parse_alpha(const std::string& text, int rank)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v <= 0)
                throw UsageError("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--alpha expects positive integers, got '" + item + "'");
        }
    }
    if (static_cast<int>(out.size()) != rank)
        throw UsageError("--alpha needs " + std::to_string(rank) + " entries");
    return out;
}

void emit(const RunConfig& cfg, const json& j, const std::string& text)
{
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string vec_text(const std::vector<int>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

OrbitCache cache_for(const RunConfig& cfg) { return OrbitCache(resolve_cache_dir(cfg.cache_dir)); }

int cmd_chart(const RunConfig& cfg)
{
    const auto& c = *cfg.chart;
    std::ostringstream os;
    os << c.name() << ": rank " << c.rank() << ", ambient dimension " << c.ambient_dim() << ", "
       << c.positive_roots().size() << " positive roots, |W| = " << weyl_group_order(c) << "\n";
    if (!c.pinned_symbols().empty()) {
        os << "BC" << c.rank() << " root set with";
        for (std::size_t i = 0; i < c.pinned_symbols().size(); ++i)
            os << (i ? ", " : " ") << param_name(c.pinned_symbols()[i]) << " = 0";
        os << "\n";
    }
    os << "scale " << rational_text(c.scale_convention()) << ", characteristic vector " << vec_text(c.char_vector())
       << "\n";
    for (std::size_t i = 0; i < c.fundamental_seeds().size(); ++i)
        os << "seed " << i + 1 << ": " << c.fundamental_seeds()[i].to_string() << "\n";
    emit(cfg, to_json(c), os.str());
    return 0;
}

int cmd_orbit(RunConfig& cfg)
{
    auto cache = cache_for(cfg);
    const auto& c = *cfg.chart;
    std::vector<std::size_t> seeds;
    if (cfg.seed_given) {
        if (cfg.seed < 1 || cfg.seed > static_cast<std::uint64_t>(c.rank()))
            throw UsageError("--seed for orbit is a fundamental seed index 1.." + std::to_string(c.rank()));
        seeds.push_back(static_cast<std::size_t>(cfg.seed - 1));
    } else {
        for (int a = 0; a < c.rank(); ++a)
            seeds.push_back(static_cast<std::size_t>(a));
    }
    json out = json::array();
    std::ostringstream os;
    for (auto a : seeds) {
        const auto& orbit = cache.fundamental_orbit(c, a);
        json ws = json::array();
        for (const auto& w : orbit)
            ws.push_back(to_json(c.to_coord(w)));
        out.push_back({{"model", c.name()}, {"seed", a + 1}, {"size", orbit.size()}, {"weights", ws}});
        os << "orbit " << a + 1 << " (" << orbit.size() << " weights)\n";
        for (const auto& w : orbit)
            os << "  " << c.to_coord(w).to_string() << "\n";
    }
    emit(cfg, seeds.size() == 1 ? out[0] : out, os.str());
    return 0;
}

int cmd_fti(RunConfig& cfg)
{
    auto cache = cache_for(cfg);
    cache.warm(*cfg.chart);
    json out = json::array();
    std::ostringstream os;
    for (int a = 0; a < cfg.chart->rank(); ++a) {
        const ExpSum f = orbit_sum(cfg.chart, static_cast<std::size_t>(a));
        json j = to_json(f);
        j["tau"] = a + 1;
        out.push_back(j);
        os << "tau" << a + 1 << " (" << f.size() << " terms) =";
        bool first = true;
        for (const auto& [w, c] : f.sorted_terms()) {
            os << (first ? " " : " + ") << "e^{i " << cfg.chart->to_coord(w).to_string() << ".y}";
            first = false;
        }
        os << "\n";
    }
    emit(cfg, out, os.str());
    return 0;
}

std::string operator_text(const AlgebraicOperator& op)
{
    std::ostringstream os;
    for (int a = 0; a < op.nvars; ++a)
        for (int b = a; b < op.nvars; ++b)
            os << "A" << a + 1 << b + 1 << " = " << op.A[a][b].to_string() << "\n";
    for (int a = 0; a < op.nvars; ++a)
        os << "B" << a + 1 << " = " << op.B[a].to_string() << "\n";
    os << "c0 = " << op.c0.to_string() << "\n";
    return os.str();
}

int cmd_operator(RunConfig& cfg)
{
    cache_for(cfg).warm(*cfg.chart);
    AlgebraicOperator op = gauge_operator(cfg.chart);
    if (!cfg.params.empty())
        op = op.substitute_params(cfg.params);
    emit(cfg, to_json(op), operator_text(op));
    return op.c0.is_zero() ? 0 : kExitFail;
}

Errata load_errata(const RunConfig& cfg)
{
    return Errata::load(cfg.errata_file.empty() ? Errata::default_file() : std::filesystem::path(cfg.errata_file));
}

int cmd_verify(RunConfig& cfg)
{
    cache_for(cfg).warm(*cfg.chart);
    VerifyOptions opt;
    opt.n = cfg.n;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.oracle_params = oracle_values(*cfg.chart, cfg.params);
    const auto rep = run_verify(cfg.chart, load_errata(cfg), opt);
    emit(cfg, rep.to_json(), rep.to_text());
    return rep.pass() ? 0 : kExitFail;
}

int cmd_flag_check(RunConfig& cfg)
{
    cache_for(cfg).warm(*cfg.chart);
    const auto op = PolyOperator::from_algebraic(gauge_operator(cfg.chart));
    const std::vector<int> alpha = cfg.alpha.empty() ? cfg.chart->char_vector() : cfg.alpha;
    const int n = cfg.n >= 0 ? cfg.n : 6;
    const auto rep = check_flag(op, alpha, n);
    json j = to_json(rep);
    j = {{"model", cfg.chart->name()}, {"report", j}};
    std::ostringstream os;
    os << cfg.chart->name() << " flag " << vec_text(alpha) << " up to n = " << n << ": "
       << (rep.pass ? "preserved" : "violated") << " (" << rep.checked << " monomials)\n";
    if (!rep.pass)
        os << "  witness " << rep.witness << " (degree " << rep.witness_degree << ") -> " << rep.offending_term
           << " (degree " << rep.image_degree << ")\n";
    if (cfg.search_bound > 0) {
        const auto found = min_charvector_search(op, cfg.search_bound, n);
        j["min_charvector"] = found ? json(*found) : json(nullptr);
        j["search"] = {{"entry_bound", cfg.search_bound}, {"n_test", n}};
        os << "  minimal characteristic vector (entries <= " << cfg.search_bound
           << "): " << (found ? vec_text(*found) : std::string("none found")) << "\n";
    }
    emit(cfg, j, os.str());
    return rep.pass ? 0 : kExitFail;
}

int cmd_spectrum(RunConfig& cfg, bool jack)
{
    cache_for(cfg).warm(*cfg.chart);
    for (Param p : cfg.chart->active_symbols())
        if (!cfg.params.count(p))
            throw UsageError(std::string("spectrum needs a rational value for ") + param_name(p));
    const auto op = PolyOperator::from_algebraic(gauge_operator(cfg.chart));
    FlagSpec flag{cfg.alpha.empty() ? cfg.chart->char_vector() : cfg.alpha, cfg.n >= 0 ? cfg.n : 2};
    const auto s = spectrum(op, flag, cfg.params);

    json pairs = json::array();
    std::ostringstream os;
    os << cfg.chart->name() << " " << (jack ? "Jack polynomials" : "spectrum") << " on " << vec_text(flag.alpha)
       << ", n <= " << flag.n << "\n";
    std::vector<TauPoly::Exponent> quantum;
    std::vector<Rational> values;
    bool invariant = true;
    for (const auto& e : s.eigenpairs) {
        json p = {{"value", rational_text(e.value)}, {"poly", to_json(e.poly)}, {"degree", e.degree}};
        if (e.has_leading) {
            std::vector<int> q(e.leading.begin(), e.leading.begin() + cfg.chart->rank());
            p["quantum"] = q;
            quantum.push_back(e.leading);
            values.push_back(e.value);
        }
        if (e.defective)
            p["defective"] = true;
        if (jack) {
            const bool inv = is_weyl_invariant(expand_tau(cfg.chart, e.poly));
            invariant = invariant && inv;
            p["weyl_invariant"] = inv;
        }
        pairs.push_back(p);
        os << "  " << rational_text(e.value) << ": " << e.poly.to_string() << (e.defective ? "  [defective]" : "")
           << "\n";
    }
    json j = {{"model", cfg.chart->name()},
              {"alpha", flag.alpha},
              {"n", flag.n},
              {"params", params_to_json(cfg.params)},
              {"eigenpairs", pairs},
              {"resonances", s.resonances}};
    if (!s.irrational.empty())
        j["irrational"] = s.irrational;
    const std::size_t r = static_cast<std::size_t>(cfg.chart->rank());
    const std::size_t unknowns = r * (r + 1) / 2 + r + 1;
    if (quantum.size() >= unknowns && quantum.size() == s.eigenpairs.size()) {
        const auto fit = fit_quadratic(quantum, values, cfg.chart->rank());
        j["quadratic_fit"] = {{"exact", fit.exact}, {"formula", fit.formula}, {"residual", rational_text(fit.residual)}};
        os << "  fit: " << fit.formula << (fit.exact ? " (exact)" : " (not exact)") << "\n";
    }
    for (const auto& r : s.resonances)
        os << "  resonance: " << r << "\n";
    for (const auto& r : s.irrational)
        os << "  irrational: " << r << "\n";
    if (jack)
        j["weyl_invariant"] = invariant;
    emit(cfg, j, os.str());

    bool defective = false;
    for (const auto& e : s.eigenpairs)
        defective = defective || e.defective;
    if (jack && !invariant)
        return kExitFail;
    if (cfg.strict && (!s.resonances.empty() || defective || !s.irrational.empty()))
        return kExitFail;
    return 0;
}

int cmd_oracle_check(RunConfig& cfg)
{
    cache_for(cfg).warm(*cfg.chart);
    const ParamValues pv = oracle_values(*cfg.chart, cfg.params);
    const auto op = gauge_operator(cfg.chart);
    const auto mine = compare_operator_numeric(cfg.chart, op, pv, cfg.trials, cfg.seed);
    json j = {{"model", cfg.chart->name()}, {"computed", to_json(mine)}};
    std::ostringstream os;
    os << cfg.chart->name() << " oracle, " << cfg.trials << " trials, seed " << cfg.seed << "\n";
    os << "  computed operator: max rel dev " << mine.max_rel_dev << ", " << mine.failures.size() << " failures\n";
    const auto ref = reference_table(cfg.chart->id());
    if (!diff_operators(op, ref).empty()) {
        const auto theirs = compare_operator_numeric(cfg.chart, ref, pv, cfg.trials, cfg.seed);
        j["printed"] = to_json(theirs);
        const bool ours = mine.failures.empty() && !theirs.failures.empty();
        j["verdict"] = ours ? "computed" : (theirs.failures.empty() ? "printed" : "neither");
        os << "  printed operator: max rel dev " << theirs.max_rel_dev << ", " << theirs.failures.size()
           << " failures\n  verdict: " << j["verdict"].get<std::string>() << "\n";
    } else {
        j["verdict"] = "tables agree";
    }
    emit(cfg, j, os.str());
    return mine.failures.empty() ? 0 : kExitFail;
}

int cmd_curvature(RunConfig& cfg)
{
    cache_for(cfg).warm(*cfg.chart);
    const ParamValues pv = oracle_values(*cfg.chart, cfg.params);
    const auto rep = curvature_check(gauge_operator(cfg.chart), pv, random_tau_points(cfg.chart, cfg.points, cfg.seed));
    json j = {{"model", cfg.chart->name()}, {"seed", cfg.seed}, {"report", to_json(rep)}};
    std::ostringstream os;
    os << cfg.chart->name() << " curvature: max |R| = " << rep.max_abs << " over " << rep.points_used
       << " points, cond(A) <= " << rep.max_condition << "\n";
    for (const auto& n : rep.notices)
        os << "  " << n << "\n";
    emit(cfg, j, os.str());
    return rep.max_abs < 1e-5 && rep.points_used > 0 ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"triginv: algebraic forms of trigonometric Calogero-Sutherland models"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--model", cfg.model, "model id, e.g. A3, BC2, G2, F4, E6");
    app.add_option("--params", cfg.params_text, "coupling values k=v[,k=v] (nu, mu, nu2, nu3)");
    app.add_option("--n", cfg.n, "flag degree bound");
    app.add_option("--alpha", cfg.alpha_text, "characteristic vector a1,a2,...");
    app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--cache-dir", cfg.cache_dir, "orbit cache directory (else TRIGINV_CACHE)");
    auto* seed_opt = app.add_option("--seed", cfg.seed, "RNG seed; for orbit, the fundamental seed index");
    app.add_flag("--strict", cfg.strict, "fail on resonances and defective eigenvectors");
    app.add_option("--errata", cfg.errata_file, "errata fixture (default: bundled data/errata.json)");

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"chart", "root system chart"},
        {"orbit", "fundamental Weyl orbits"},
        {"fti", "fundamental trigonometric invariants as exponential sums"},
        {"operator", "algebraic form of the gauge-rotated Hamiltonian"},
        {"verify", "all checks for a model against the printed results"},
        {"flag-check", "flag preservation and minimal characteristic vector"},
        {"spectrum", "exact eigenvalues on a flag space"},
        {"jack", "eigenpolynomials (generalized Jack polynomials)"},
        {"oracle-check", "finite-difference comparison against the Hamiltonian"},
        {"curvature", "Riemann tensor of the operator metric"},
    };
    std::map<std::string, CLI::App*> cmd;
    for (const auto& s : subs)
        cmd[s.name] = app.add_subcommand(s.name, s.help);
    cmd["oracle-check"]->add_option("--trials", cfg.trials, "random trials")->check(CLI::PositiveNumber);
    cmd["verify"]->add_option("--trials", cfg.trials, "oracle trials")->check(CLI::PositiveNumber);
    cmd["curvature"]->add_option("--points", cfg.points, "random points")->check(CLI::PositiveNumber);
    cmd["flag-check"]->add_option("--search", cfg.search_bound, "search the minimal vector with entries <= bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }
    cfg.seed_given = seed_opt->count() > 0;

    try {
        if (cfg.model.empty())
            throw UsageError("--model is required");
        cfg.chart = build_chart(cfg.model);
        cfg.params = parse_params(cfg.params_text, *cfg.chart);
        if (!cfg.alpha_text.empty())
            cfg.alpha = parse_alpha(cfg.alpha_text, cfg.chart->rank());

        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "chart")
            return cmd_chart(cfg);
        if (name == "orbit")
            return cmd_orbit(cfg);
        if (name == "fti")
            return cmd_fti(cfg);
        if (name == "operator")
            return cmd_operator(cfg);
        if (name == "verify")
            return cmd_verify(cfg);
        if (name == "flag-check")
            return cmd_flag_check(cfg);
        if (name == "spectrum")
            return cmd_spectrum(cfg, false);
        if (name == "jack")
            return cmd_spectrum(cfg, true);
        if (name == "oracle-check")
            return cmd_oracle_check(cfg);
        if (name == "curvature")
            return cmd_curvature(cfg);
        throw UsageError("unknown command " + name);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
