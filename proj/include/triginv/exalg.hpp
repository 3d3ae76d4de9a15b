#ifndef TRIGINV_EXALG_HPP
#define TRIGINV_EXALG_HPP

#include "triginv/param_scalar.hpp"
#include "triginv/rootdata.hpp"
#include "triginv/tau_poly.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

namespace triginv {

/// Finite sum of c_w e^{i w.y} over weights of one chart (beta = 1).
class ExpSum {
public:
    using Map = std::unordered_map<Weight, ParamScalar, WeightHash>;

    ExpSum() = default;
    explicit ExpSum(ChartPtr chart) : chart_(std::move(chart)) {}

    const ChartPtr& chart() const { return chart_; }
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    ParamScalar coefficient(const Weight& w) const;
    void add(const Weight& w, const ParamScalar& c);
    void reserve(std::size_t n) { terms_.reserve(n); }

    ExpSum& operator+=(const ExpSum& o);
    ExpSum& operator-=(const ExpSum& o);
    ExpSum scaled(const ParamScalar& c) const;
    ExpSum scaled(const Rational& q) const;

    /// Terms in canonical (ambient lexicographic) order.
    std::vector<std::pair<Weight, ParamScalar>> sorted_terms() const;

    std::complex<double> evaluate(const std::vector<double>& y, const ParamValues& params) const;

    bool operator==(const ExpSum& o) const;
    bool operator!=(const ExpSum& o) const { return !(*this == o); }

private:
    ChartPtr chart_;
    Map terms_;
};

inline ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
inline ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }

/// tau_a as an exponential sum (0-based seed index).
ExpSum orbit_sum(const ChartPtr& chart, std::size_t a);
ExpSum constant_sum(const ChartPtr& chart, const ParamScalar& c);

ExpSum mul(const ExpSum& f, const ExpSum& g);
ExpSum mul_serial(const ExpSum& f, const ExpSum& g);

/// grad F . grad G in the chart form.
ExpSum grad_pair(const ExpSum& f, const ExpSum& g);
ExpSum grad_pair_serial(const ExpSum& f, const ExpSum& g);

ExpSum laplacian(const ExpSum& f);

/// d/d(alpha.y) up to the factor: sum i (alpha.w) c_w e^w.
ExpSum root_derivative(const ExpSum& f, std::size_t root_index);

/// cot(alpha.y / 2) * F for F antisymmetric under s_alpha.
ExpSum cot_mul(const ExpSum& f, std::size_t root_index);

/// grad log Psi0 . grad F.
ExpSum logderiv_pair(const ExpSum& f);

bool is_weyl_invariant(const ExpSum& f);

/// Orbit-basis coefficients: dominant weight -> integer multiplicity.
using OrbitExpansion = std::vector<std::pair<Weight, std::int64_t>>;

using OrbitExpansionPtr = std::shared_ptr<const OrbitExpansion>;

/// tau^m written in orbit sums m_lambda, memoized per chart.
OrbitExpansionPtr expand_monomial_orbit(const ChartPtr& chart, const TauPoly::Exponent& m);
OrbitExpansionPtr expand_monomial_orbit_serial(const ChartPtr& chart, const TauPoly::Exponent& m);

/// m_lambda * tau_a in the orbit basis, memoized.
OrbitExpansionPtr orbit_product(const ChartPtr& chart, const Weight& lambda, std::size_t a);

/// Canonically ordered orbit of a dominant weight, memoized.
std::shared_ptr<const std::vector<Weight>> cached_orbit(const ChartPtr& chart, const Weight& dominant);

ExpSum expand_tau(const ChartPtr& chart, const TauPoly& p);

/// Unique polynomial p with expand_tau(p) == F. Throws NotInvariantError.
TauPoly to_tau(const ExpSum& f);

/// Same rewriting starting from orbit-basis coefficients (dominant weights only).
TauPoly to_tau_orbit(const ChartPtr& chart, const std::vector<std::pair<Weight, ParamScalar>>& dominant_coeffs);

/// Drops the exalg memo caches (used by cache tests and benchmarks).
void clear_expansion_cache();

} // namespace triginv

#endif
