#include "triginv/exalg.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>

namespace triginv {

namespace {

struct ProductKey {
    Weight lambda;
    std::size_t a;
    bool operator<(const ProductKey& o) const { return a != o.a ? a < o.a : lambda < o.lambda; }
};

struct ChartCache {
    std::mutex mutex;
    std::map<TauPoly::Exponent, OrbitExpansionPtr> monomials;
    std::map<ProductKey, OrbitExpansionPtr> products;
    std::map<Weight, std::shared_ptr<const std::vector<Weight>>> orbits;
};

std::mutex g_registry_mutex;
std::map<std::string, std::shared_ptr<ChartCache>> g_registry;

std::shared_ptr<ChartCache> cache_for(const ModelChart& chart)
{
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto& slot = g_registry[chart.name()];
    if (!slot)
        slot = std::make_shared<ChartCache>();
    return slot;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw InternalError("orbit expansion coefficient overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw InternalError("orbit expansion coefficient overflow");
    return r;
}

OrbitExpansion compute_orbit_product(const ModelChart& chart, const Weight& lambda, std::size_t a)
{
    // m_lambda m_mu = sum_nu |O_lambda| / |O_nu| #{w in O_mu : lambda + w in O_nu} m_nu
    std::map<Weight, std::int64_t> counts;
    for (const auto& w : chart.fundamental_orbit(a))
        ++counts[dominant_representative(chart, lambda + w)];
    const std::int64_t size_lambda = chart.orbit_size_dominant(lambda);
    OrbitExpansion out;
    out.reserve(counts.size());
    for (const auto& [nu, k] : counts) {
        const std::int64_t num = checked_mul(k, size_lambda);
        const std::int64_t den = chart.orbit_size_dominant(nu);
        if (num % den != 0)
            throw InternalError("non-integral orbit product coefficient on " + chart.name());
        out.emplace_back(nu, num / den);
    }
    return out;
}

void add_scaled(std::map<Weight, std::int64_t>& acc, const OrbitExpansion& e, std::int64_t c)
{
    for (const auto& [nu, k] : e) {
        auto& slot = acc[nu];
        slot = checked_add(slot, checked_mul(c, k));
    }
}

OrbitExpansion to_expansion(const std::map<Weight, std::int64_t>& acc)
{
    OrbitExpansion out;
    out.reserve(acc.size());
    for (const auto& [nu, k] : acc)
        if (k != 0)
            out.emplace_back(nu, k);
    return out;
}

int last_nonzero(const TauPoly::Exponent& m)
{
    for (int i = kMaxRank - 1; i >= 0; --i)
        if (m[i] > 0)
            return i;
    return -1;
}

std::vector<std::int64_t> order_key(const ModelChart& chart, const Weight& w)
{
    auto c = chart.root_coordinates_scaled(w);
    std::int64_t h = 0;
    for (auto x : c)
        h += x;
    c.insert(c.begin(), h);
    return c;
}

} // namespace

OrbitExpansionPtr orbit_product(const ChartPtr& chart, const Weight& lambda, std::size_t a)
{
    auto cache = cache_for(*chart);
    const ProductKey key{lambda, a};
    {
        std::lock_guard<std::mutex> lock(cache->mutex);
        auto it = cache->products.find(key);
        if (it != cache->products.end())
            return it->second;
    }
    auto value = std::make_shared<const OrbitExpansion>(compute_orbit_product(*chart, lambda, a));
    std::lock_guard<std::mutex> lock(cache->mutex);
    return cache->products.emplace(key, std::move(value)).first->second;
}

OrbitExpansionPtr expand_monomial_orbit(const ChartPtr& chart, const TauPoly::Exponent& m)
{
    auto cache = cache_for(*chart);
    {
        std::lock_guard<std::mutex> lock(cache->mutex);
        auto it = cache->monomials.find(m);
        if (it != cache->monomials.end())
            return it->second;
    }
    OrbitExpansion result;
    const int a = last_nonzero(m);
    if (a < 0) {
        result.emplace_back(Weight{}, 1);
    } else {
        if (a >= chart->rank())
            throw ArgumentError("monomial uses more variables than the chart rank");
        TauPoly::Exponent prev = m;
        prev[a] -= 1;
        const auto base = expand_monomial_orbit(chart, prev);
        const auto n = static_cast<std::int64_t>(base->size());
        std::vector<OrbitExpansionPtr> parts(base->size());
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                parts[i] = orbit_product(chart, (*base)[i].first, a);
            } catch (...) {
#pragma omp critical
                error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
        std::map<Weight, std::int64_t> acc;
        for (std::int64_t i = 0; i < n; ++i)
            add_scaled(acc, *parts[i], (*base)[i].second);
        result = to_expansion(acc);
    }
    auto value = std::make_shared<const OrbitExpansion>(std::move(result));
    std::lock_guard<std::mutex> lock(cache->mutex);
    return cache->monomials.emplace(m, std::move(value)).first->second;
}

OrbitExpansionPtr expand_monomial_orbit_serial(const ChartPtr& chart, const TauPoly::Exponent& m)
{
    // uncached reference path
    std::map<Weight, std::int64_t> acc{{Weight{}, 1}};
    for (int a = 0; a < chart->rank(); ++a)
        for (int k = 0; k < m[a]; ++k) {
            std::map<Weight, std::int64_t> next;
            for (const auto& [lambda, c] : acc)
                add_scaled(next, compute_orbit_product(*chart, lambda, a), c);
            acc = std::move(next);
        }
    return std::make_shared<const OrbitExpansion>(to_expansion(acc));
}

std::shared_ptr<const std::vector<Weight>> cached_orbit(const ChartPtr& chart, const Weight& dominant)
{
    auto cache = cache_for(*chart);
    {
        std::lock_guard<std::mutex> lock(cache->mutex);
        auto it = cache->orbits.find(dominant);
        if (it != cache->orbits.end())
            return it->second;
    }
    auto value = std::make_shared<const std::vector<Weight>>(weyl_orbit_weights(*chart, dominant));
    std::lock_guard<std::mutex> lock(cache->mutex);
    return cache->orbits.emplace(dominant, std::move(value)).first->second;
}

ExpSum expand_tau(const ChartPtr& chart, const TauPoly& p)
{
    if (p.nvars() > chart->rank())
        throw ArgumentError("polynomial has more variables than the chart rank");
    std::map<Weight, ParamScalar> orbit_coeffs;
    for (const auto& [m, c] : p.terms())
        for (const auto& [lambda, k] : *expand_monomial_orbit(chart, m))
            orbit_coeffs[lambda] += c.scaled(Rational(k));
    ExpSum out(chart);
    for (const auto& [lambda, c] : orbit_coeffs) {
        if (c.is_zero())
            continue;
        for (const auto& w : *cached_orbit(chart, lambda))
            out.add(w, c);
    }
    return out;
}

TauPoly to_tau_orbit(const ChartPtr& chart, const std::vector<std::pair<Weight, ParamScalar>>& dominant_coeffs)
{
    using Entry = std::pair<Weight, ParamScalar>;
    std::map<std::vector<std::int64_t>, Entry> work;
    auto add = [&](const Weight& w, const ParamScalar& c) {
        if (c.is_zero())
            return;
        auto key = order_key(*chart, w);
        auto it = work.find(key);
        if (it == work.end()) {
            work.emplace(std::move(key), Entry{w, c});
        } else {
            it->second.second += c;
            if (it->second.second.is_zero())
                work.erase(it);
        }
    };
    for (const auto& [w, c] : dominant_coeffs) {
        if (!chart->is_dominant(w))
            throw NotInvariantError("orbit coefficient on a non-dominant weight");
        add(w, c);
    }
    TauPoly result(chart->rank());
    while (!work.empty()) {
        auto top = std::prev(work.end());
        const Weight lambda = top->second.first;
        const ParamScalar c = top->second.second;
        TauPoly::Exponent m{};
        for (int i = 0; i < chart->rank(); ++i) {
            if (lambda[i] < 0 || lambda[i] > 255)
                throw NotInvariantError("leading weight is not dominant");
            m[i] = static_cast<std::uint8_t>(lambda[i]);
        }
        result.add_term(m, c);
        for (const auto& [nu, k] : *expand_monomial_orbit(chart, m))
            add(nu, c.scaled(Rational(-k)));
        if (!work.empty() && std::prev(work.end())->second.first == lambda)
            throw InternalError("leading orbit did not cancel");
    }
    return result;
}

TauPoly to_tau(const ExpSum& f)
{
    if (!is_weyl_invariant(f))
        throw NotInvariantError("exponential sum is not Weyl-invariant");
    const auto& chart = *f.chart();
    std::vector<std::pair<Weight, ParamScalar>> dom;
    for (const auto& [w, c] : f.terms())
        if (chart.is_dominant(w))
            dom.emplace_back(w, c);
    std::sort(dom.begin(), dom.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return to_tau_orbit(f.chart(), dom);
}

void clear_expansion_cache()
{
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    g_registry.clear();
}

} // namespace triginv
