#include "triginv/flagspec.hpp"

#include "triginv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>

namespace triginv {

namespace {

std::map<TauPoly::Exponent, std::size_t> index_of(const std::vector<TauPoly::Exponent>& basis)
{
    std::map<TauPoly::Exponent, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx[basis[i]] = i;
    return idx;
}

PolyOperator bind_all(const PolyOperator& op, const ParamBinding& binding)
{
    PolyOperator bound = op.substitute_params(binding);
    for (const auto& [k, c] : bound.terms())
        for (const auto& [m, s] : c.terms())
            if (!s.is_constant() || !s.is_real())
                throw ArgumentError("operator coefficient " + s.to_string() + " is not a bound real rational");
    return bound;
}

void fill_column(RationalMatrix& M, const PolyOperator& op, const std::vector<TauPoly::Exponent>& basis,
                 const std::map<TauPoly::Exponent, std::size_t>& idx, std::size_t j)
{
    const TauPoly img = apply(op, TauPoly::monomial(op.nvars(), basis[j]));
    for (const auto& [m, c] : img.terms()) {
        auto it = idx.find(m);
        if (it == idx.end())
            throw ArgumentError("operator maps " + monomial_string(basis[j], op.nvars()) +
                                " outside the flag space");
        M(it->second, j) = c.constant_term().re;
    }
}

RationalMatrix build_matrix(const PolyOperator& op_in, const FlagSpec& flag, const ParamBinding& binding,
                            bool serial)
{
    if (static_cast<int>(flag.alpha.size()) != op_in.nvars())
        throw ArgumentError("flag and operator arity differ");
    const PolyOperator op = bind_all(op_in, binding);
    const auto basis = flag.basis();
    const auto idx = index_of(basis);
    RationalMatrix M(basis.size(), basis.size());
    if (serial) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            fill_column(M, op, basis, idx, j);
        return M;
    }
    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t j = 0; j < n; ++j) {
        try {
            // columns are disjoint, so writes do not race
            fill_column(M, op, basis, idx, static_cast<std::size_t>(j));
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return M;
}

Rational eval_poly(const std::vector<Rational>& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

// p / (x - r), assuming r is a root
std::vector<Rational> deflate(const std::vector<Rational>& p, const Rational& r)
{
    const std::size_t n = p.size() - 1;
    std::vector<Rational> q(n);
    Rational carry = 0;
    for (std::size_t k = n; k >= 1; --k) {
        carry = p[k] + carry * r;
        q[k - 1] = carry;
    }
    return q;
}

// convergents of the continued fraction of x with denominators up to max_den
std::vector<Rational> convergents(double x, long max_den)
{
    std::vector<Rational> out;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        if (!std::isfinite(fl) || std::abs(fl) > 1e15)
            break;
        const Integer a = static_cast<long>(fl);
        const Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den)
            break;
        out.emplace_back(h2, k2);
        out.back().canonicalize();
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = v - fl;
        if (frac < 1e-15)
            break;
        v = 1 / frac;
    }
    return out;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<Rational>& p)
{
    const int n = static_cast<int>(p.size()) - 1;
    if (n < 1)
        return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    const double lead = p[n].get_d();
    for (int i = 1; i < n; ++i)
        C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i)
        C(i, n - 1) = -p[i].get_d() / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i)
        out.push_back(es.eigenvalues()(i));
    return out;
}

// reduced row echelon form in place; returns pivot columns
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[row]);
        const Rational inv = 1 / a[row][c];
        for (auto& v : a[row])
            v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c] == 0)
                continue;
            const Rational f = a[r][c];
            for (std::size_t k = 0; k < a[r].size(); ++k)
                a[r][k] -= f * a[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, std::size_t cols)
{
    const auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

// Solves a x = b; returns false if inconsistent. Free variables are set to zero.
bool solve(std::vector<std::vector<Rational>> a, const std::vector<Rational>& b, std::vector<Rational>& x,
           bool& singular)
{
    const std::size_t n = a.empty() ? 0 : a[0].size();
    for (std::size_t r = 0; r < a.size(); ++r)
        a[r].push_back(b[r]);
    const auto pivots = rref(a, n);
    singular = pivots.size() < n;
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (a[r][n] != 0)
            return false;
    x.assign(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = a[r][n];
    return true;
}

} // namespace

RationalMatrix operator_matrix(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding)
{
    return build_matrix(op, flag, binding, false);
}

RationalMatrix operator_matrix_serial(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding)
{
    return build_matrix(op, flag, binding, true);
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& m)
{
    // Faddeev-LeVerrier
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix Mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix next = m * Mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        Mk = std::move(next);
        const RationalMatrix AM = m * Mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += AM(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

std::vector<Rational> rational_roots(const std::vector<Rational>& poly_in, int& rest)
{
    std::vector<Rational> p = poly_in;
    while (p.size() > 1 && p.back() == 0)
        p.pop_back();
    std::vector<Rational> roots;
    bool progress = true;
    while (p.size() > 1 && progress) {
        progress = false;
        for (const auto& z : numeric_roots(p)) {
            if (std::abs(z.imag()) > 1e-3 * std::max(1.0, std::abs(z.real())))
                continue;
            for (const auto& cand : convergents(z.real(), 1000000)) {
                if (eval_poly(p, cand) == 0) {
                    roots.push_back(cand);
                    p = deflate(p, cand);
                    progress = true;
                    break;
                }
            }
            if (progress)
                break;
        }
    }
    rest = static_cast<int>(p.size()) - 1;
    std::sort(roots.begin(), roots.end());
    return roots;
}

SpectrumResult spectrum(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding)
{
    SpectrumResult res;
    const auto basis = flag.basis();
    const RationalMatrix M = operator_matrix(op, flag, binding);
    const std::size_t N = basis.size();
    std::vector<int> deg(N);
    for (std::size_t i = 0; i < N; ++i)
        deg[i] = weighted_degree(basis[i], flag.alpha);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (deg[i] > deg[j] && M(i, j) != 0)
                res.flag_ok = false;
    if (!res.flag_ok)
        return res;

    // degree blocks as index ranges
    std::map<int, std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < N; ++i) {
        auto [it, inserted] = blocks.try_emplace(deg[i], i, i + 1);
        if (!inserted)
            it->second.second = i + 1;
    }
    auto block_matrix = [&](int d, const Rational& shift) {
        const auto [b, e] = blocks.at(d);
        std::vector<std::vector<Rational>> a(e - b, std::vector<Rational>(e - b));
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = b; j < e; ++j)
                a[i - b][j - b] = M(i, j) - (i == j ? shift : Rational(0));
        return a;
    };

    std::map<int, std::vector<Rational>> block_roots;
    for (const auto& [d, range] : blocks) {
        const auto [b, e] = range;
        RationalMatrix D(e - b, e - b);
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = b; j < e; ++j)
                D(i - b, j - b) = M(i, j);
        int rest = 0;
        block_roots[d] = rational_roots(characteristic_polynomial(D), rest);
        if (rest > 0)
            res.irrational.push_back("degree " + std::to_string(d) + ": " + std::to_string(rest) +
                                     " eigenvalues outside Q");
    }

    // resonances: one value in two different degree blocks
    std::map<Rational, std::vector<int>> where;
    for (const auto& [d, roots] : block_roots) {
        std::vector<Rational> distinct = roots;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (const auto& v : distinct)
            where[v].push_back(d);
    }
    for (const auto& [v, ds] : where)
        if (ds.size() > 1) {
            std::ostringstream os;
            os << "eigenvalue " << to_pq_string(v) << " in degrees";
            for (int d : ds)
                os << " " << d;
            res.resonances.push_back(os.str());
        }

    for (const auto& [d, roots] : block_roots) {
        const auto [b, e] = blocks.at(d);
        std::vector<Rational> distinct = roots;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        // diagonal entries give quantum numbers when they reproduce the block spectrum
        std::vector<Rational> diag;
        for (std::size_t i = b; i < e; ++i)
            diag.push_back(M(i, i));
        std::vector<Rational> sorted_diag = diag;
        std::sort(sorted_diag.begin(), sorted_diag.end());
        const bool triangular_like = sorted_diag == roots;
        std::vector<bool> used(diag.size(), false);

        for (const auto& lambda : distinct) {
            const auto null = nullspace(block_matrix(d, lambda), e - b);
            for (const auto& u : null) {
                Eigenpair ep;
                ep.value = lambda;
                ep.degree = d;
                std::vector<Rational> v(N);
                for (std::size_t i = b; i < e; ++i)
                    v[i] = u[i - b];
                // back-substitute into lower degree blocks, highest first
                for (auto it = blocks.find(d); it != blocks.begin();) {
                    --it;
                    const auto [lb, le] = it->second;
                    std::vector<Rational> rhs(le - lb);
                    for (std::size_t i = lb; i < le; ++i) {
                        Rational s = 0;
                        for (std::size_t j = le; j < e; ++j)
                            if (v[j] != 0 && M(i, j) != 0)
                                s += M(i, j) * v[j];
                        rhs[i - lb] = -s;
                    }
                    std::vector<Rational> x;
                    bool singular = false;
                    if (!solve(block_matrix(it->first, lambda), rhs, x, singular)) {
                        ep.defective = true;
                        x.assign(le - lb, Rational(0));
                    }
                    for (std::size_t i = lb; i < le; ++i)
                        v[i] = x[i - lb];
                }
                // normalize the last nonzero top-block coefficient to 1
                std::size_t lead = e;
                for (std::size_t i = e; i-- > b;)
                    if (v[i] != 0) {
                        lead = i;
                        break;
                    }
                const Rational norm = lead < e ? v[lead] : Rational(1);
                TauPoly poly(op.nvars());
                for (std::size_t i = 0; i < N; ++i)
                    if (v[i] != 0)
                        poly.add_term(basis[i], ParamScalar(Rational(v[i] / norm)));
                ep.poly = std::move(poly);
                if (triangular_like) {
                    for (std::size_t i = 0; i < diag.size(); ++i)
                        if (!used[i] && diag[i] == lambda) {
                            used[i] = true;
                            ep.leading = basis[b + i];
                            ep.has_leading = true;
                            break;
                        }
                }
                res.eigenpairs.push_back(std::move(ep));
            }
        }
    }
    return res;
}

QuadraticFit fit_quadratic(const std::vector<TauPoly::Exponent>& quantum, const std::vector<Rational>& values,
                           int nvars)
{
    if (quantum.size() != values.size())
        throw ArgumentError("quantum numbers and values differ in length");
    QuadraticFit fit;
    fit.points = values.size();
    const int r = nvars;
    // feature order: p_a p_b (a <= b), p_a, 1
    auto features = [&](const TauPoly::Exponent& p) {
        std::vector<Rational> f;
        for (int a = 0; a < r; ++a)
            for (int b = a; b < r; ++b)
                f.emplace_back(static_cast<long>(p[a]) * p[b]);
        for (int a = 0; a < r; ++a)
            f.emplace_back(static_cast<long>(p[a]));
        f.emplace_back(1);
        return f;
    };
    const std::size_t K = static_cast<std::size_t>(r * (r + 1) / 2 + r + 1);
    std::vector<std::vector<Rational>> ata(K, std::vector<Rational>(K));
    std::vector<Rational> atb(K);
    for (std::size_t i = 0; i < quantum.size(); ++i) {
        const auto f = features(quantum[i]);
        for (std::size_t a = 0; a < K; ++a) {
            atb[a] += f[a] * values[i];
            for (std::size_t b = 0; b < K; ++b)
                ata[a][b] += f[a] * f[b];
        }
    }
    std::vector<Rational> x;
    bool singular = false;
    solve(ata, atb, x, singular);
    fit.quad.assign(r, std::vector<Rational>(r));
    fit.lin.assign(r, Rational(0));
    std::size_t k = 0;
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b)
            fit.quad[a][b] = x[k++];
    for (int a = 0; a < r; ++a)
        fit.lin[a] = x[k++];
    fit.constant = x[k];
    fit.residual = 0;
    for (std::size_t i = 0; i < quantum.size(); ++i) {
        const auto f = features(quantum[i]);
        Rational pred = 0;
        for (std::size_t a = 0; a < K; ++a)
            pred += f[a] * x[a];
        const Rational d = pred - values[i];
        fit.residual += d * d;
    }
    fit.exact = fit.residual == 0;
    TauPoly shown(r);
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) {
            TauPoly::Exponent m{};
            m[a] += 1;
            m[b] += 1;
            shown.add_term(m, ParamScalar(fit.quad[a][b]));
        }
    for (int a = 0; a < r; ++a) {
        TauPoly::Exponent m{};
        m[a] = 1;
        shown.add_term(m, ParamScalar(fit.lin[a]));
    }
    shown.add_term(TauPoly::Exponent{}, ParamScalar(fit.constant));
    fit.formula = shown.to_string("p");
    return fit;
}

} // namespace triginv
