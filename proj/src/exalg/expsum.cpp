#include "triginv/exalg.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triginv {

namespace {

void require_same_chart(const ExpSum& f, const ExpSum& g)
{
    if (!f.chart() || !g.chart() || f.chart()->name() != g.chart()->name())
        throw ArgumentError("exponential sums live on different charts");
}

void accumulate(ExpSum::Map& m, const Weight& w, const ParamScalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = m.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            m.erase(it);
    }
}

std::vector<std::pair<Weight, const ParamScalar*>> flat_terms(const ExpSum& f)
{
    std::vector<std::pair<Weight, const ParamScalar*>> v;
    v.reserve(f.size());
    for (const auto& [w, c] : f.terms())
        v.emplace_back(w, &c);
    // fixed order keeps chunking deterministic
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

// Parallel convolution skeleton: each thread fills a private map for a
// slice of the left operand, maps are merged afterwards. Exact addition
// makes the merge order irrelevant.
template <class Kernel>
ExpSum convolve_parallel(const ExpSum& f, const ExpSum& g, Kernel kernel)
{
    const auto left = flat_terms(f);
    const auto right = flat_terms(g);
    const auto n = static_cast<std::int64_t>(left.size());
    std::vector<ExpSum::Map> partial;
#pragma omp parallel if (n * static_cast<std::int64_t>(right.size()) > 4096)
    {
        int tid = 0;
        int nth = 1;
#ifdef _OPENMP
        tid = omp_get_thread_num();
        nth = omp_get_num_threads();
#endif
#pragma omp single
        partial.resize(nth);
        ExpSum::Map& local = partial[tid];
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < n; ++i)
            for (const auto& r : right)
                kernel(local, left[i], r);
    }
    ExpSum out(f.chart());
    std::size_t biggest = 0;
    for (std::size_t t = 1; t < partial.size(); ++t)
        if (partial[t].size() > partial[biggest].size())
            biggest = t;
    ExpSum::Map merged = partial.empty() ? ExpSum::Map{} : std::move(partial[biggest]);
    for (std::size_t t = 0; t < partial.size(); ++t)
        if (t != biggest)
            for (const auto& [w, c] : partial[t])
                accumulate(merged, w, c);
    for (auto& [w, c] : merged)
        out.add(w, c);
    return out;
}

template <class Kernel>
ExpSum convolve_serial(const ExpSum& f, const ExpSum& g, Kernel kernel)
{
    ExpSum::Map acc;
    for (const auto& [w1, c1] : f.terms())
        for (const auto& [w2, c2] : g.terms())
            kernel(acc, std::pair<Weight, const ParamScalar*>(w1, &c1), std::pair<Weight, const ParamScalar*>(w2, &c2));
    ExpSum out(f.chart());
    for (auto& [w, c] : acc)
        out.add(w, c);
    return out;
}

ParamScalar times(const ParamScalar& a, const ParamScalar& b)
{
    if (a.is_constant() && a.is_real())
        return b.scaled(a.constant_term().re);
    if (b.is_constant() && b.is_real())
        return a.scaled(b.constant_term().re);
    return a * b;
}

struct MulKernel {
    void operator()(ExpSum::Map& acc, const std::pair<Weight, const ParamScalar*>& a,
                    const std::pair<Weight, const ParamScalar*>& b) const
    {
        accumulate(acc, a.first + b.first, times(*a.second, *b.second));
    }
};

struct GradKernel {
    const ModelChart* chart;
    void operator()(ExpSum::Map& acc, const std::pair<Weight, const ParamScalar*>& a,
                    const std::pair<Weight, const ParamScalar*>& b) const
    {
        const std::int64_t p = chart->pair_scaled(a.first, b.first);
        if (p == 0)
            return;
        // (i w).(i w') = -(w.w')
        const Rational f = make_rational(-p, chart->pair_denominator());
        accumulate(acc, a.first + b.first, times(*a.second, *b.second).scaled(f));
    }
};

} // namespace

ParamScalar ExpSum::coefficient(const Weight& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? ParamScalar() : it->second;
}

void ExpSum::add(const Weight& w, const ParamScalar& c)
{
    accumulate(terms_, w, c);
}

ExpSum& ExpSum::operator+=(const ExpSum& o)
{
    if (!chart_)
        chart_ = o.chart_;
    else if (o.chart_)
        require_same_chart(*this, o);
    for (const auto& [w, c] : o.terms_)
        accumulate(terms_, w, c);
    return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o)
{
    if (!chart_)
        chart_ = o.chart_;
    else if (o.chart_)
        require_same_chart(*this, o);
    for (const auto& [w, c] : o.terms_)
        accumulate(terms_, w, -c);
    return *this;
}

ExpSum ExpSum::scaled(const ParamScalar& s) const
{
    ExpSum out(chart_);
    for (const auto& [w, c] : terms_)
        out.add(w, times(c, s));
    return out;
}

ExpSum ExpSum::scaled(const Rational& q) const
{
    ExpSum out(chart_);
    if (q == 0)
        return out;
    out.terms_.reserve(terms_.size());
    for (const auto& [w, c] : terms_)
        out.terms_.emplace(w, c.scaled(q));
    return out;
}

std::vector<std::pair<Weight, ParamScalar>> ExpSum::sorted_terms() const
{
    std::vector<std::pair<std::vector<std::int64_t>, std::pair<Weight, ParamScalar>>> keyed;
    keyed.reserve(terms_.size());
    for (const auto& [w, c] : terms_)
        keyed.push_back({chart_->ambient_key(w), {w, c}});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Weight, ParamScalar>> out;
    out.reserve(keyed.size());
    for (auto& k : keyed)
        out.push_back(std::move(k.second));
    return out;
}

std::complex<double> ExpSum::evaluate(const std::vector<double>& y, const ParamValues& params) const
{
    if (static_cast<int>(y.size()) != chart_->ambient_dim())
        throw ArgumentError("evaluation point has wrong dimension");
    std::complex<double> sum = 0;
    for (const auto& [w, c] : terms_) {
        const CoordVector v = chart_->to_coord(w);
        double phase = 0;
        for (std::size_t k = 0; k < y.size(); ++k)
            phase += v[k].get_d() * y[k];
        sum += c.evaluate(params) * std::polar(1.0, phase);
    }
    return sum;
}

bool ExpSum::operator==(const ExpSum& o) const
{
    if (terms_.size() != o.terms_.size())
        return false;
    for (const auto& [w, c] : terms_) {
        auto it = o.terms_.find(w);
        if (it == o.terms_.end() || it->second != c)
            return false;
    }
    return true;
}

ExpSum orbit_sum(const ChartPtr& chart, std::size_t a)
{
    ExpSum out(chart);
    const auto& orbit = chart->fundamental_orbit(a);
    out.reserve(orbit.size());
    for (const auto& w : orbit)
        out.add(w, ParamScalar(1));
    return out;
}

ExpSum constant_sum(const ChartPtr& chart, const ParamScalar& c)
{
    ExpSum out(chart);
    out.add(Weight{}, c);
    return out;
}

ExpSum mul(const ExpSum& f, const ExpSum& g)
{
    require_same_chart(f, g);
    return convolve_parallel(f, g, MulKernel{});
}

ExpSum mul_serial(const ExpSum& f, const ExpSum& g)
{
    require_same_chart(f, g);
    return convolve_serial(f, g, MulKernel{});
}

ExpSum grad_pair(const ExpSum& f, const ExpSum& g)
{
    require_same_chart(f, g);
    return convolve_parallel(f, g, GradKernel{f.chart().get()});
}

ExpSum grad_pair_serial(const ExpSum& f, const ExpSum& g)
{
    require_same_chart(f, g);
    return convolve_serial(f, g, GradKernel{f.chart().get()});
}

ExpSum laplacian(const ExpSum& f)
{
    const auto& chart = *f.chart();
    ExpSum out(f.chart());
    for (const auto& [w, c] : f.terms()) {
        const std::int64_t p = chart.pair_scaled(w, w);
        if (p != 0)
            out.add(w, c.scaled(make_rational(-p, chart.pair_denominator())));
    }
    return out;
}

ExpSum root_derivative(const ExpSum& f, std::size_t root_index)
{
    const auto& chart = *f.chart();
    const Weight& alpha = chart.positive_roots().at(root_index).weight;
    ExpSum out(f.chart());
    for (const auto& [w, c] : f.terms()) {
        const std::int64_t p = chart.pair_scaled(alpha, w);
        if (p != 0)
            out.add(w, c.times_i().scaled(make_rational(p, chart.pair_denominator())));
    }
    return out;
}

ExpSum cot_mul(const ExpSum& f, std::size_t root_index)
{
    const auto& chart = *f.chart();
    const Weight& alpha = chart.positive_roots().at(root_index).weight;
    ExpSum out(f.chart());
    for (const auto& [w, c] : f.terms()) {
        const int m = chart.coroot_pairing(root_index, w);
        if (m == 0)
            throw NotCotMultiplicableError("nonzero coefficient on a weight fixed by the reflection");
        Weight partner = w;
        for (int k = 0; k < kMaxRank; ++k)
            partner[k] -= m * alpha[k];
        if (f.coefficient(partner) != -c)
            throw NotCotMultiplicableError("input is not antisymmetric under the root reflection");
        if (m < 0)
            continue;
        // cot(a/2)(e^w - e^{w - m a}) = i[e^w + 2 sum_{0<j<m} e^{w - j a} + e^{w - m a}]
        const ParamScalar ic = c.times_i();
        out.add(w, ic);
        out.add(partner, ic);
        Weight step = w;
        const ParamScalar twice = ic.scaled(Rational(2));
        for (int j = 1; j < m; ++j) {
            step -= alpha;
            out.add(step, twice);
        }
    }
    return out;
}

ExpSum logderiv_pair(const ExpSum& f)
{
    const auto& chart = *f.chart();
    const auto gs = ground_state_spec(chart);
    ExpSum out(f.chart());
    for (const auto& factor : gs.factors) {
        const ExpSum d = root_derivative(f, factor.root_index);
        if (d.is_zero())
            continue;
        const ExpSum cm = cot_mul(d, factor.root_index);
        out += cm.scaled(ParamScalar::symbol(factor.exponent).scaled(Rational(1, 2)));
    }
    return out;
}

bool is_weyl_invariant(const ExpSum& f)
{
    const auto& chart = *f.chart();
    for (const auto& [w, c] : f.terms())
        for (int i = 0; i < chart.rank(); ++i) {
            if (w[i] == 0)
                continue;
            auto it = f.terms().find(chart.simple_reflect(i, w));
            if (it == f.terms().end() || it->second != c)
                return false;
        }
    return true;
}

} // namespace triginv
