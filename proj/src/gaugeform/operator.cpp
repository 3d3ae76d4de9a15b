#include "triginv/gaugeform.hpp"

#include "triginv/errors.hpp"

#include <exception>
#include <sstream>

namespace triginv {

AlgebraicOperator AlgebraicOperator::zero(std::string model, int nvars)
{
    AlgebraicOperator op;
    op.model = std::move(model);
    op.nvars = nvars;
    op.A.assign(nvars, std::vector<TauPoly>(nvars, TauPoly(nvars)));
    op.B.assign(nvars, TauPoly(nvars));
    op.char_vector.assign(nvars, 1);
    return op;
}

bool AlgebraicOperator::is_symmetric() const
{
    for (int a = 0; a < nvars; ++a)
        for (int b = a + 1; b < nvars; ++b)
            if (A[a][b] != A[b][a])
                return false;
    return true;
}

bool AlgebraicOperator::is_real() const
{
    for (int a = 0; a < nvars; ++a) {
        if (!B[a].is_real())
            return false;
        for (int b = 0; b < nvars; ++b)
            if (!A[a][b].is_real())
                return false;
    }
    return c0.is_real();
}

AlgebraicOperator AlgebraicOperator::substitute_params(const ParamBinding& binding) const
{
    AlgebraicOperator out = *this;
    for (int a = 0; a < nvars; ++a) {
        out.B[a] = B[a].substitute_params(binding);
        for (int b = 0; b < nvars; ++b)
            out.A[a][b] = A[a][b].substitute_params(binding);
    }
    out.c0 = c0.substitute(binding);
    return out;
}

TauPoly apply(const AlgebraicOperator& op, const TauPoly& p)
{
    if (p.nvars() != op.nvars)
        throw ArgumentError("operator and polynomial arity differ");
    TauPoly out = p.scaled(op.c0);
    for (int a = 0; a < op.nvars; ++a) {
        const TauPoly da = p.derivative(a);
        if (da.is_zero())
            continue;
        out += op.B[a] * da;
        for (int b = 0; b < op.nvars; ++b)
            if (!op.A[a][b].is_zero())
                out += op.A[a][b] * da.derivative(b);
    }
    return out;
}

namespace {

struct EntryTask {
    char kind;
    int a;
    int b;
};

std::vector<EntryTask> entry_tasks(int r)
{
    std::vector<EntryTask> tasks;
    // largest entries first so the dynamic schedule balances
    for (int a = r - 1; a >= 0; --a)
        for (int b = r - 1; b >= a; --b)
            tasks.push_back({'A', a, b});
    for (int a = r - 1; a >= 0; --a)
        tasks.push_back({'B', a, a});
    return tasks;
}

TauPoly compute_entry(const ChartPtr& chart, const std::vector<ExpSum>& tau, const EntryTask& t, bool serial)
{
    const Rational& c = chart->scale_convention();
    TauPoly p;
    if (t.kind == 'A') {
        const ExpSum g = serial ? grad_pair_serial(tau[t.a], tau[t.b]) : grad_pair(tau[t.a], tau[t.b]);
        p = to_tau(g).scaled(Rational(-c / 2));
    } else {
        // h0 F = -(1/2) Lap F - grad log Psi0 . grad F
        ExpSum f = laplacian(tau[t.a]).scaled(Rational(-1, 2));
        f -= logderiv_pair(tau[t.a]);
        p = to_tau(f).scaled(c);
    }
    if (!p.is_real())
        throw InternalError("gauge operator coefficient has an imaginary part on " + chart->name());
    return p;
}

AlgebraicOperator assemble(const ChartPtr& chart, bool serial)
{
    const int r = chart->rank();
    std::vector<ExpSum> tau;
    for (int a = 0; a < r; ++a)
        tau.push_back(orbit_sum(chart, a));
    const auto tasks = entry_tasks(r);
    std::vector<TauPoly> results(tasks.size());
    if (serial) {
        for (std::size_t k = 0; k < tasks.size(); ++k)
            results[k] = compute_entry(chart, tau, tasks[k], true);
    } else {
        std::exception_ptr error;
        const auto n = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t k = 0; k < n; ++k) {
            try {
                results[k] = compute_entry(chart, tau, tasks[k], false);
            } catch (...) {
#pragma omp critical
                error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
    }
    AlgebraicOperator op = AlgebraicOperator::zero(chart->name(), r);
    op.char_vector = chart->char_vector();
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const auto& t = tasks[k];
        if (t.kind == 'A') {
            op.A[t.a][t.b] = results[k];
            op.A[t.b][t.a] = results[k];
        } else {
            op.B[t.a] = results[k];
        }
    }
    return op;
}

} // namespace

AlgebraicOperator gauge_operator(const ChartPtr& chart)
{
    return assemble(chart, false);
}

AlgebraicOperator gauge_operator_serial(const ChartPtr& chart)
{
    return assemble(chart, true);
}

ParamScalar ground_state_energy(const ModelChart& chart)
{
    const auto rho = deformed_weyl_vector(chart);
    const auto& K = chart.form();
    ParamScalar e0;
    for (int j = 0; j < chart.ambient_dim(); ++j)
        for (int k = 0; k < chart.ambient_dim(); ++k)
            if (K(j, k) != 0 && !rho[j].is_zero() && !rho[k].is_zero())
                e0 += (rho[j] * rho[k]).scaled(Rational(K(j, k)));
    return e0.scaled(Rational(1, 8));
}

std::vector<OperatorMismatch> diff_operators(const AlgebraicOperator& lhs, const AlgebraicOperator& rhs)
{
    if (lhs.nvars != rhs.nvars)
        throw ArgumentError("operators have different arity");
    std::vector<OperatorMismatch> out;
    for (int a = 0; a < lhs.nvars; ++a)
        for (int b = a; b < lhs.nvars; ++b) {
            TauPoly d = lhs.A[a][b] - rhs.A[a][b];
            if (!d.is_zero())
                out.push_back({'A', a, b, std::move(d)});
        }
    for (int a = 0; a < lhs.nvars; ++a) {
        TauPoly d = lhs.B[a] - rhs.B[a];
        if (!d.is_zero())
            out.push_back({'B', a, a, std::move(d)});
    }
    if (lhs.c0 != rhs.c0)
        out.push_back({'c', 0, 0, TauPoly::constant(lhs.nvars, lhs.c0 - rhs.c0)});
    return out;
}

std::string mismatch_label(const OperatorMismatch& m)
{
    std::ostringstream os;
    if (m.kind == 'A')
        os << "A" << m.i + 1 << m.j + 1;
    else if (m.kind == 'B')
        os << "B" << m.i + 1;
    else
        os << "c0";
    return os.str();
}

std::vector<int> involution_permutation(const ModelId& model)
{
    std::vector<int> perm;
    if (model.family == ModelFamily::A) {
        for (int i = 0; i < model.rank; ++i)
            perm.push_back(model.rank - 1 - i);
    } else if (model.family == ModelFamily::E6) {
        perm = {1, 0, 3, 2, 4, 5};
    } else {
        throw ArgumentError("no involution for model " + model.name());
    }
    return perm;
}

std::vector<PairingCheck> involution_check(const ModelId& model, const AlgebraicOperator& op)
{
    const auto perm = involution_permutation(model);
    if (static_cast<int>(perm.size()) != op.nvars)
        throw ArgumentError("operator arity does not match the model");
    std::vector<PairingCheck> out;
    for (int a = 0; a < op.nvars; ++a)
        for (int b = a; b < op.nvars; ++b) {
            int pa = perm[a], pb = perm[b];
            if (pa > pb)
                std::swap(pa, pb);
            if (pa < a || (pa == a && pb < b))
                continue;   // reported with its partner
            std::ostringstream label;
            label << "A" << a + 1 << b + 1 << " <-> A" << pa + 1 << pb + 1;
            out.push_back({label.str(), op.A[a][b].permuted(perm) == op.A[pa][pb]});
        }
    for (int a = 0; a < op.nvars; ++a) {
        const int pa = perm[a];
        if (pa < a)
            continue;
        std::ostringstream label;
        label << "B" << a + 1 << " <-> B" << pa + 1;
        out.push_back({label.str(), op.B[a].permuted(perm) == op.B[pa]});
    }
    return out;
}

std::vector<std::string> degree_bound_violations(const AlgebraicOperator& op, const std::vector<int>& alpha)
{
    std::vector<std::string> out;
    for (int a = 0; a < op.nvars; ++a) {
        for (int b = a; b < op.nvars; ++b) {
            const int d = op.A[a][b].weighted_degree(alpha);
            if (d > alpha[a] + alpha[b])
                out.push_back("A" + std::to_string(a + 1) + std::to_string(b + 1) + " has weighted degree " +
                              std::to_string(d));
        }
        const int d = op.B[a].weighted_degree(alpha);
        if (d > alpha[a])
            out.push_back("B" + std::to_string(a + 1) + " has weighted degree " + std::to_string(d));
    }
    return out;
}

} // namespace triginv
