#ifndef TRIGINV_ORACLE_HPP
#define TRIGINV_ORACLE_HPP

#include "triginv/gaugeform.hpp"
#include "triginv/rootdata.hpp"
#include "triginv/tau_poly.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace triginv {

/// A point in the ambient coordinates of a chart. Everything evaluated here
/// is translation invariant along directions orthogonal to the weights, so
/// A_N and G_2 points need not be projected onto the zero-sum plane.
struct EvalPoint {
    std::vector<double> y;
};

using ComplexVector = std::vector<std::complex<double>>;

/// tau_a(y) = sum over the orbit of e^{i w.y}, by direct summation.
ComplexVector eval_fti(const ChartPtr& chart, const EvalPoint& point);

/// min over positive roots of |sin(alpha.y / 2)|.
double min_root_sine(const ModelChart& chart, const EvalPoint& point);

/// Uniform draw from [-pi, pi]^m, rejected while min_root_sine <= margin.
EvalPoint random_admissible_point(const ModelChart& chart, std::mt19937_64& rng, double margin = 0.1);

/// Binds every active exponent symbol of the chart; missing ones throw ArgumentError.
ParamValues complete_params(const ModelChart& chart, const ParamValues& params);

/// scale * Psi0^{-1} (H - E0) (Psi0 * p(tau)) at the point, from order-6
/// central differences of the product with step h. H is the trigonometric
/// Hamiltonian built from the chart roots; E0 from ground_state_energy.
std::complex<double> eval_gauge_apply(const ChartPtr& chart, const ParamValues& params, const TauPoly& p,
                                      const EvalPoint& point, double h = 1e-3, double margin = 1e-3);

struct OracleFailure {
    int trial = 0;
    std::vector<double> y;
    std::string monomial;
    double rel_dev = 0;
};

struct OracleReport {
    std::string model;
    std::uint64_t seed = 0;
    int trials = 0;
    double h = 1e-3;
    double tolerance = 1e-7;
    double max_rel_dev = 0;
    std::vector<OracleFailure> failures;
};

/// Random admissible points and random monomials of weighted degree
/// <= max_degree; compares eval_gauge_apply with apply(op, p) evaluated at
/// tau(y). Deviation is |numeric - exact| / max(1, |exact|).
OracleReport compare_operator_numeric(const ChartPtr& chart, const AlgebraicOperator& op, const ParamValues& params,
                                      int trials, std::uint64_t seed, double h = 1e-3, double tolerance = 1e-7,
                                      int max_degree = -1);
OracleReport compare_operator_numeric_serial(const ChartPtr& chart, const AlgebraicOperator& op,
                                             const ParamValues& params, int trials, std::uint64_t seed,
                                             double h = 1e-3, double tolerance = 1e-7, int max_degree = -1);

struct ConvergenceResult {
    double h = 0;
    double dev_h = 0;
    double dev_half = 0;
    double ratio = 0;
    double order = 0;
};

/// Deviation of a single oracle trial at steps h and h/2.
ConvergenceResult convergence_order(const ChartPtr& chart, const AlgebraicOperator& op, const ParamValues& params,
                                    std::uint64_t seed, double h);

struct CurvatureReport {
    double max_abs = 0;
    double max_condition = 0;   // largest |eigenvalue| ratio of A over used points
    int points_used = 0;
    std::vector<std::string> notices;
};

/// Treats A_ab (scale removed) as a contravariant metric on tau-space and
/// returns the largest Riemann component over the given tau points. All
/// derivatives are taken exactly on the polynomial entries; the tensor
/// algebra runs in long double.
CurvatureReport curvature_check(const AlgebraicOperator& op, const ParamValues& params,
                                const std::vector<ComplexVector>& tau_points);

/// tau images of `count` random admissible points.
std::vector<ComplexVector> random_tau_points(const ChartPtr& chart, int count, std::uint64_t seed,
                                             double margin = 0.1);

} // namespace triginv

#endif
