#include "triginv/oracle.hpp"

#include "triginv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace triginv {

namespace {

using cd = std::complex<double>;

// Plain double data of a chart; no exact-engine code below this point.
struct NumericChart {
    int dim = 0;
    std::vector<std::vector<std::vector<double>>> orbits;   // per seed, ambient coords
    std::vector<std::vector<double>> kinetic;                // form matrix
    struct Root {
        std::vector<double> v;
        double norm2 = 0;
        int exponent = -1;     // index into ParamValues order, -1 if pinned
        int double_of = -1;    // index of the root alpha/2 when this root is 2 alpha
        int half_of = -1;      // index of the root 2 alpha when present
    };
    std::vector<Root> roots;
};

NumericChart numeric_chart(const ModelChart& chart)
{
    NumericChart nc;
    nc.dim = chart.ambient_dim();
    for (int a = 0; a < chart.rank(); ++a) {
        std::vector<std::vector<double>> orbit;
        for (const auto& w : chart.fundamental_orbit(a)) {
            const CoordVector v = chart.to_coord(w);
            std::vector<double> d(nc.dim);
            for (int k = 0; k < nc.dim; ++k)
                d[k] = v[k].get_d();
            orbit.push_back(std::move(d));
        }
        nc.orbits.push_back(std::move(orbit));
    }
    nc.kinetic.assign(nc.dim, std::vector<double>(nc.dim));
    for (int j = 0; j < nc.dim; ++j)
        for (int k = 0; k < nc.dim; ++k)
            nc.kinetic[j][k] = chart.form()(j, k).get_d();
    const auto& roots = chart.positive_roots();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        NumericChart::Root r;
        for (int k = 0; k < nc.dim; ++k)
            r.v.push_back(roots[i].vector[k].get_d());
        r.norm2 = chart.dot(roots[i].vector, roots[i].vector).get_d();
        if (auto p = root_exponent(chart, i))
            r.exponent = static_cast<int>(*p);
        nc.roots.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (roots[j].vector == roots[i].vector.scaled(2)) {
                nc.roots[i].half_of = static_cast<int>(j);
                nc.roots[j].double_of = static_cast<int>(i);
            }
    return nc;
}

double dotv(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

ComplexVector fti(const NumericChart& nc, const std::vector<double>& y)
{
    ComplexVector tau;
    for (const auto& orbit : nc.orbits) {
        cd s = 0;
        for (const auto& w : orbit)
            s += std::polar(1.0, dotv(w, y));
        tau.push_back(s);
    }
    return tau;
}

double exponent_value(const ParamValues& params, int idx)
{
    auto it = params.find(static_cast<Param>(idx));
    return it == params.end() ? 0.0 : it->second;
}

// sum_alpha |alpha|^2 g_alpha / (8 sin^2(alpha.y/2)), g = mu(mu - 1); a root
// alpha whose double is also a root picks up the cross term 2 mu_alpha mu_2alpha.
double potential(const NumericChart& nc, const ParamValues& params, const std::vector<double>& y)
{
    double v = 0;
    for (const auto& r : nc.roots) {
        if (r.exponent < 0)
            continue;
        const double mu = exponent_value(params, r.exponent);
        double g = mu * (mu - 1);
        if (r.half_of >= 0 && nc.roots[r.half_of].exponent >= 0)
            g += 2 * mu * exponent_value(params, nc.roots[r.half_of].exponent);
        const double s = std::sin(dotv(r.v, y) / 2);
        v += r.norm2 * g / (8 * s * s);
    }
    return v;
}

constexpr double kSecond[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
constexpr double kFirst[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0, 3.0 / 4, -3.0 / 20, 1.0 / 60};

// sum_jk K_jk d_j d_k f at offset 0, order-6 central differences; f takes the offset
template <class F>
cd kinetic_laplacian(const NumericChart& nc, const F& f, double h)
{
    cd total = 0;
    std::vector<double> z(nc.dim, 0.0);
    for (int j = 0; j < nc.dim; ++j) {
        if (nc.kinetic[j][j] == 0)
            continue;
        cd s = 0;
        for (int a = 0; a < 7; ++a) {
            z[j] = (a - 3) * h;
            s += kSecond[a] * f(z);
        }
        z[j] = 0;
        total += nc.kinetic[j][j] * s / (h * h);
    }
    for (int j = 0; j < nc.dim; ++j)
        for (int k = 0; k < nc.dim; ++k) {
            if (j == k || nc.kinetic[j][k] == 0)
                continue;
            cd s = 0;
            for (int a = 0; a < 7; ++a)
                for (int b = 0; b < 7; ++b) {
                    if (kFirst[a] == 0 || kFirst[b] == 0)
                        continue;
                    z[j] = (a - 3) * h;
                    z[k] = (b - 3) * h;
                    s += kFirst[a] * kFirst[b] * f(z);
                }
            z[j] = 0;
            z[k] = 0;
            total += nc.kinetic[j][k] * s / (h * h);
        }
    return total;
}

// Psi0(y + d) / Psi0(y) and tau(y + d) with the phases at y factored out, so
// stencil values carry relative rather than absolute rounding errors.
struct LocalFrame {
    const NumericChart& nc;
    const ParamValues& params;
    std::vector<double> y;
    std::vector<double> half_phase;            // alpha.y / 2
    std::vector<std::vector<cd>> base;         // e^{i w.y}

    LocalFrame(const NumericChart& c, const ParamValues& p, std::vector<double> point)
        : nc(c), params(p), y(std::move(point))
    {
        for (const auto& r : nc.roots)
            half_phase.push_back(dotv(r.v, y) / 2);
        for (const auto& orbit : nc.orbits) {
            std::vector<cd> b;
            for (const auto& w : orbit)
                b.push_back(std::polar(1.0, dotv(w, y)));
            base.push_back(std::move(b));
        }
    }

    double psi_ratio(const std::vector<double>& d) const
    {
        double log_ratio = 0;
        for (std::size_t i = 0; i < nc.roots.size(); ++i) {
            const auto& r = nc.roots[i];
            if (r.exponent < 0)
                continue;
            const double u = half_phase[i];
            const double e = dotv(r.v, d) / 2;
            // sin(u + e) / sin(u) - 1 = 2 cos(u + e/2) sin(e/2) / sin(u)
            const double rel = 2 * std::cos(u + e / 2) * std::sin(e / 2) / std::sin(u);
            log_ratio += exponent_value(params, r.exponent) * std::log1p(rel);
        }
        return std::exp(log_ratio);
    }

    ComplexVector tau(const std::vector<double>& d) const
    {
        ComplexVector t;
        for (std::size_t a = 0; a < nc.orbits.size(); ++a) {
            cd s = 0;
            for (std::size_t k = 0; k < nc.orbits[a].size(); ++k)
                s += base[a][k] * std::polar(1.0, dotv(nc.orbits[a][k], d));
            t.push_back(s);
        }
        return t;
    }
};

cd gauge_apply(const NumericChart& nc, double scale, double e0, const ParamValues& params, const TauPoly& p,
               const std::vector<double>& y, double h)
{
    const LocalFrame frame(nc, params, y);
    auto f = [&](const std::vector<double>& d) { return frame.psi_ratio(d) * p.evaluate(frame.tau(d), params); };
    const cd lap = kinetic_laplacian(nc, f, h);
    const cd f0 = p.evaluate(fti(nc, y), params);
    return scale * (-0.5 * lap + (potential(nc, params, y) - e0) * f0);
}

struct Trial {
    std::vector<double> y;
    TauPoly monomial;
};

std::vector<TauPoly> low_degree_monomials(int r, const std::vector<int>& alpha, int max_degree)
{
    std::vector<TauPoly> out;
    TauPoly::Exponent e{};
    // odometer over exponents with sum alpha_a e_a <= max_degree
    while (true) {
        out.push_back(TauPoly::monomial(r, e));
        int a = 0;
        for (; a < r; ++a) {
            e[a] += 1;
            int d = 0;
            for (int b = 0; b < r; ++b)
                d += alpha[b] * e[b];
            if (d <= max_degree)
                break;
            e[a] = 0;
        }
        if (a == r)
            break;
    }
    return out;
}

// Keeps every stencil point on the same side of each root hyperplane.
double stencil_margin(const NumericChart& nc, double h)
{
    double reach = 0;
    for (const auto& r : nc.roots)
        for (double c : r.v)
            reach = std::max(reach, 1.5 * h * std::abs(c));
    return std::max(0.1, 1.1 * reach);
}

std::vector<Trial> draw_trials(const ModelChart& chart, const AlgebraicOperator& op, int trials, std::uint64_t seed,
                               int max_degree, double margin)
{
    std::mt19937_64 rng(seed);
    std::vector<int> alpha = op.char_vector;
    if (static_cast<int>(alpha.size()) != op.nvars)
        alpha.assign(op.nvars, 1);
    if (max_degree < 0)
        max_degree = op.nvars <= 4 ? 3 : 2;
    const auto pool = low_degree_monomials(op.nvars, alpha, max_degree);
    std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1);
    std::vector<Trial> out;
    for (int t = 0; t < trials; ++t) {
        EvalPoint pt = random_admissible_point(chart, rng, margin);
        out.push_back({std::move(pt.y), pool.size() > 1 ? pool[pick(rng)] : pool[0]});
    }
    return out;
}

OracleReport run_trials(const ChartPtr& chart, const AlgebraicOperator& op, const ParamValues& params_in, int trials,
                        std::uint64_t seed, double h, double tolerance, int max_degree, bool serial,
                        double margin_step = 0)
{
    const ParamValues params = complete_params(*chart, params_in);
    OracleReport rep;
    rep.model = chart->name();
    rep.seed = seed;
    rep.trials = trials;
    rep.h = h;
    rep.tolerance = tolerance;
    if (trials <= 0)
        return rep;
    const NumericChart nc = numeric_chart(*chart);
    // margin_step > h keeps the sample identical across a family of steps
    const auto work =
        draw_trials(*chart, op, trials, seed, max_degree, stencil_margin(nc, std::max(h, margin_step)));
    const double scale = chart->scale_convention().get_d();
    const double e0 = ground_state_energy(*chart).evaluate(params).real();
    std::vector<double> dev(work.size());
    auto one = [&](std::size_t t) {
        const TauPoly exact = apply(op, work[t].monomial);
        const cd want = exact.evaluate(fti(nc, work[t].y), params);
        const cd got = gauge_apply(nc, scale, e0, params, work[t].monomial, work[t].y, h);
        dev[t] = std::abs(got - want) / std::max(1.0, std::abs(want));
        if (std::isnan(dev[t]))
            dev[t] = std::numeric_limits<double>::infinity();
    };
    if (serial) {
        for (std::size_t t = 0; t < work.size(); ++t)
            one(t);
    } else {
        std::exception_ptr error;
        const auto n = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t t = 0; t < n; ++t) {
            try {
                one(static_cast<std::size_t>(t));
            } catch (...) {
#pragma omp critical
                error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
    }
    for (std::size_t t = 0; t < work.size(); ++t) {
        rep.max_rel_dev = std::max(rep.max_rel_dev, dev[t]);
        if (!(dev[t] <= tolerance))
            rep.failures.push_back({static_cast<int>(t), work[t].y, work[t].monomial.to_string(), dev[t]});
    }
    return rep;
}

} // namespace

ComplexVector eval_fti(const ChartPtr& chart, const EvalPoint& point)
{
    if (static_cast<int>(point.y.size()) != chart->ambient_dim())
        throw ArgumentError("evaluation point has wrong dimension");
    return fti(numeric_chart(*chart), point.y);
}

double min_root_sine(const ModelChart& chart, const EvalPoint& point)
{
    if (static_cast<int>(point.y.size()) != chart.ambient_dim())
        throw ArgumentError("evaluation point has wrong dimension");
    double m = 1;
    for (const auto& r : chart.positive_roots()) {
        double phase = 0;
        for (int k = 0; k < chart.ambient_dim(); ++k)
            phase += r.vector[k].get_d() * point.y[k];
        m = std::min(m, std::abs(std::sin(phase / 2)));
    }
    return m;
}

EvalPoint random_admissible_point(const ModelChart& chart, std::mt19937_64& rng, double margin)
{
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    EvalPoint pt;
    pt.y.resize(chart.ambient_dim());
    for (int attempt = 0; attempt < 100000; ++attempt) {
        for (auto& v : pt.y)
            v = u(rng);
        if (min_root_sine(chart, pt) > margin)
            return pt;
    }
    throw EvaluationError("no admissible point found for " + chart.name());
}

ParamValues complete_params(const ModelChart& chart, const ParamValues& params)
{
    ParamValues out;
    for (Param p : chart.active_symbols()) {
        auto it = params.find(p);
        if (it == params.end())
            throw ArgumentError(std::string("parameter ") + param_name(p) + " is not bound");
        out[p] = it->second;
    }
    return out;
}

std::complex<double> eval_gauge_apply(const ChartPtr& chart, const ParamValues& params_in, const TauPoly& p,
                                      const EvalPoint& point, double h, double margin)
{
    if (static_cast<int>(point.y.size()) != chart->ambient_dim())
        throw ArgumentError("evaluation point has wrong dimension");
    if (min_root_sine(*chart, point) <= margin)
        throw EvaluationError("point too close to a zero of the ground state");
    const ParamValues params = complete_params(*chart, params_in);
    const NumericChart nc = numeric_chart(*chart);
    const double e0 = ground_state_energy(*chart).evaluate(params).real();
    return gauge_apply(nc, chart->scale_convention().get_d(), e0, params, p, point.y, h);
}

OracleReport compare_operator_numeric(const ChartPtr& chart, const AlgebraicOperator& op, const ParamValues& params,
                                      int trials, std::uint64_t seed, double h, double tolerance, int max_degree)
{
    return run_trials(chart, op, params, trials, seed, h, tolerance, max_degree, false);
}

OracleReport compare_operator_numeric_serial(const ChartPtr& chart, const AlgebraicOperator& op,
                                             const ParamValues& params, int trials, std::uint64_t seed, double h,
                                             double tolerance, int max_degree)
{
    return run_trials(chart, op, params, trials, seed, h, tolerance, max_degree, true);
}

ConvergenceResult convergence_order(const ChartPtr& chart, const AlgebraicOperator& op, const ParamValues& params,
                                    std::uint64_t seed, double h)
{
    ConvergenceResult res;
    res.h = h;
    res.dev_h = run_trials(chart, op, params, 1, seed, h, 1.0, -1, true, h).max_rel_dev;
    res.dev_half = run_trials(chart, op, params, 1, seed, h / 2, 1.0, -1, true, h).max_rel_dev;
    res.ratio = res.dev_h / res.dev_half;
    res.order = std::log2(res.ratio);
    return res;
}

namespace {

// extended precision: the metric can be badly conditioned near the alcove walls
using cld = std::complex<long double>;
using CMatrix = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

struct MetricData {
    CMatrix ginv;                       // contravariant A
    CMatrix g;                          // covariant
    std::vector<CMatrix> dginv;         // d_c A
    std::vector<CMatrix> ddginv;        // d_c d_e A at c * r + e
};

MetricData metric_at(const AlgebraicOperator& op, const std::vector<std::vector<TauPoly>>& dA,
                     const std::vector<std::vector<TauPoly>>& ddA, const ParamValues& params,
                     const ComplexVector& tau)
{
    const int r = op.nvars;
    MetricData m;
    m.ginv = CMatrix(r, r);
    m.dginv.assign(r, CMatrix(r, r));
    m.ddginv.assign(r * r, CMatrix(r, r));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            m.ginv(a, b) = cld(op.A[a][b].evaluate(tau, params));
            for (int c = 0; c < r; ++c) {
                m.dginv[c](a, b) = cld(dA[c][a * r + b].evaluate(tau, params));
                for (int e = 0; e < r; ++e)
                    m.ddginv[c * r + e](a, b) = cld(ddA[c * r + e][a * r + b].evaluate(tau, params));
            }
        }
    m.g = m.ginv.fullPivLu().inverse();
    return m;
}

} // namespace

CurvatureReport curvature_check(const AlgebraicOperator& op, const ParamValues& params,
                                const std::vector<ComplexVector>& tau_points)
{
    const int r = op.nvars;
    std::vector<std::vector<TauPoly>> dA(r, std::vector<TauPoly>(r * r));
    std::vector<std::vector<TauPoly>> ddA(r * r, std::vector<TauPoly>(r * r));
    for (int c = 0; c < r; ++c)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                dA[c][a * r + b] = op.A[a][b].derivative(c);
                for (int e = 0; e < r; ++e)
                    ddA[c * r + e][a * r + b] = dA[c][a * r + b].derivative(e);
            }
    CurvatureReport rep;
    for (std::size_t i = 0; i < tau_points.size(); ++i) {
        const MetricData m = metric_at(op, dA, ddA, params, tau_points[i]);
        Eigen::ComplexEigenSolver<CMatrix> es(m.ginv);
        const long double smallest = es.eigenvalues().cwiseAbs().minCoeff();
        const long double largest = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(smallest > 1e-10L * std::max(1.0L, largest))) {
            rep.notices.push_back("point " + std::to_string(i) + " skipped: singular metric");
            continue;
        }
        rep.max_condition = std::max(rep.max_condition, static_cast<double>(largest / smallest));
        // covariant metric derivatives from g = A^-1
        std::vector<CMatrix> dg(r);
        for (int c = 0; c < r; ++c)
            dg[c] = -m.g * m.dginv[c] * m.g;
        std::vector<CMatrix> ddg(r * r);
        for (int c = 0; c < r; ++c)
            for (int e = 0; e < r; ++e)
                ddg[c * r + e] = -dg[e] * m.dginv[c] * m.g - m.g * m.ddginv[c * r + e] * m.g -
                                 m.g * m.dginv[c] * dg[e];
        // lowered Gamma_dbc and its derivative d_e Gamma_dbc
        auto low = [&](int d, int b, int c) { return 0.5L * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c)); };
        auto dlow = [&](int e, int d, int b, int c) {
            return 0.5L * (ddg[b * r + e](d, c) + ddg[c * r + e](d, b) - ddg[d * r + e](b, c));
        };
        // Gamma^a_bc at gamma[a](b, c), d_e Gamma^a_bc at dgamma[e][a](b, c)
        std::vector<CMatrix> gamma(r, CMatrix::Zero(r, r));
        std::vector<std::vector<CMatrix>> dgamma(r, std::vector<CMatrix>(r, CMatrix::Zero(r, r)));
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    for (int d = 0; d < r; ++d) {
                        const cld l = low(d, b, c);
                        gamma[a](b, c) += m.ginv(a, d) * l;
                        for (int e = 0; e < r; ++e)
                            dgamma[e][a](b, c) += m.dginv[e](a, d) * l + m.ginv(a, d) * dlow(e, d, b, c);
                    }
        // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    for (int d = c + 1; d < r; ++d) {
                        cld v = dgamma[c][a](d, b) - dgamma[d][a](c, b);
                        for (int e = 0; e < r; ++e)
                            v += gamma[a](c, e) * gamma[e](d, b) - gamma[a](d, e) * gamma[e](c, b);
                        rep.max_abs = std::max(rep.max_abs, static_cast<double>(std::abs(v)));
                    }
        ++rep.points_used;
    }
    return rep;
}

std::vector<ComplexVector> random_tau_points(const ChartPtr& chart, int count, std::uint64_t seed, double margin)
{
    std::mt19937_64 rng(seed);
    const NumericChart nc = numeric_chart(*chart);
    std::vector<ComplexVector> out;
    for (int i = 0; i < count; ++i)
        out.push_back(fti(nc, random_admissible_point(*chart, rng, margin).y));
    return out;
}

} // namespace triginv
