#include "triginv/rootdata.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triginv {

CoordVector reflect(const ModelChart& chart, const CoordVector& root, const CoordVector& v)
{
    const Rational n2 = chart.dot(root, root);
    if (n2 == 0)
        throw ArgumentError("cannot reflect in a null vector");
    return v - root.scaled(2 * chart.dot(v, root) / n2);
}

namespace {

std::vector<Weight> canonical_order(const ModelChart& chart, std::vector<Weight> orbit)
{
    std::vector<std::pair<std::vector<std::int64_t>, Weight>> keyed;
    keyed.reserve(orbit.size());
    for (const auto& w : orbit)
        keyed.emplace_back(chart.ambient_key(w), w);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < keyed.size(); ++i)
        orbit[i] = keyed[i].second;
    return orbit;
}

} // namespace

std::vector<Weight> weyl_orbit_weights_serial(const ModelChart& chart, const Weight& weight)
{
    std::unordered_set<Weight, WeightHash> seen{weight};
    std::vector<Weight> frontier{weight};
    std::vector<Weight> all{weight};
    while (!frontier.empty()) {
        std::vector<Weight> next;
        for (const auto& w : frontier)
            for (int i = 0; i < chart.rank(); ++i) {
                if (w[i] == 0)
                    continue;
                Weight r = chart.simple_reflect(i, w);
                if (seen.insert(r).second) {
                    next.push_back(r);
                    all.push_back(r);
                }
            }
        frontier = std::move(next);
    }
    return canonical_order(chart, std::move(all));
}

std::vector<Weight> weyl_orbit_weights(const ModelChart& chart, const Weight& weight)
{
    std::unordered_set<Weight, WeightHash> seen{weight};
    std::vector<Weight> frontier{weight};
    std::vector<Weight> all{weight};
    const int rank = chart.rank();
    while (!frontier.empty()) {
        // neighbours of each frontier chunk are generated independently and
        // deduplicated serially; the final sort makes the result order-free
        std::vector<Weight> candidates(frontier.size() * rank);
        std::vector<char> valid(candidates.size(), 0);
        const auto n = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for schedule(static) if (n > 256)
        for (std::int64_t k = 0; k < n; ++k)
            for (int i = 0; i < rank; ++i) {
                const Weight& w = frontier[k];
                if (w[i] == 0)
                    continue;
                candidates[k * rank + i] = chart.simple_reflect(i, w);
                valid[k * rank + i] = 1;
            }
        std::vector<Weight> next;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (valid[c] && seen.insert(candidates[c]).second) {
                next.push_back(candidates[c]);
                all.push_back(candidates[c]);
            }
        frontier = std::move(next);
    }
    return canonical_order(chart, std::move(all));
}

std::vector<CoordVector> weyl_orbit(const ModelChart& chart, const CoordVector& weight)
{
    const auto orbit = weyl_orbit_weights(chart, chart.to_weight(weight));
    std::vector<CoordVector> out;
    out.reserve(orbit.size());
    for (const auto& w : orbit)
        out.push_back(chart.to_coord(w));
    return out;
}

Weight dominant_representative(const ModelChart& chart, const Weight& weight)
{
    Weight w = weight;
    const std::size_t bound = chart.positive_roots().size() + 1;
    for (std::size_t step = 0; step <= bound; ++step) {
        int neg = -1;
        for (int i = 0; i < chart.rank(); ++i)
            if (w[i] < 0) {
                neg = i;
                break;
            }
        if (neg < 0)
            return w;
        w = chart.simple_reflect(neg, w);
    }
    throw InternalError("dominant_representative did not terminate on " + chart.name());
}

CoordVector dominant_representative(const ModelChart& chart, const CoordVector& weight)
{
    return chart.to_coord(dominant_representative(chart, chart.to_weight(weight)));
}

std::int64_t weyl_group_order(const ModelChart& chart)
{
    // a strictly dominant weight has trivial stabilizer
    Weight rho;
    for (int i = 0; i < chart.rank(); ++i)
        rho[i] = 1;
    return chart.orbit_size_dominant(rho);
}

std::optional<Param> root_exponent(const ModelChart& chart, std::size_t root_index)
{
    const auto& cls = chart.positive_roots().at(root_index).length_class;
    const Param p = chart.coupling_classes().at(cls);
    const auto& pinned = chart.pinned_symbols();
    if (std::find(pinned.begin(), pinned.end(), p) != pinned.end())
        return std::nullopt;
    return p;
}

GroundStateSpec ground_state_spec(const ModelChart& chart)
{
    GroundStateSpec gs;
    for (std::size_t k = 0; k < chart.positive_roots().size(); ++k)
        if (auto p = root_exponent(chart, k))
            gs.factors.push_back({k, *p});
    return gs;
}

std::vector<ParamScalar> deformed_weyl_vector(const ModelChart& chart)
{
    std::vector<ParamScalar> rho(chart.ambient_dim());
    for (std::size_t k = 0; k < chart.positive_roots().size(); ++k) {
        auto p = root_exponent(chart, k);
        if (!p)
            continue;
        const ParamScalar sym = ParamScalar::symbol(*p);
        const auto& v = chart.positive_roots()[k].vector;
        for (int j = 0; j < chart.ambient_dim(); ++j)
            if (v[j] != 0)
                rho[j] += sym.scaled(v[j]);
    }
    return rho;
}

} // namespace triginv
