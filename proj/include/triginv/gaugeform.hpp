#ifndef TRIGINV_GAUGEFORM_HPP
#define TRIGINV_GAUGEFORM_HPP

#include "triginv/exalg.hpp"
#include "triginv/rootdata.hpp"
#include "triginv/tau_poly.hpp"

#include <string>
#include <vector>

namespace triginv {

/// sum_ab A_ab d_a d_b + sum_a B_a d_a + c0, with A symmetric.
struct AlgebraicOperator {
    std::string model;
    int nvars = 0;
    std::vector<std::vector<TauPoly>> A;
    std::vector<TauPoly> B;
    ParamScalar c0;
    std::vector<int> char_vector;

    static AlgebraicOperator zero(std::string model, int nvars);
    bool is_symmetric() const;
    bool is_real() const;
    AlgebraicOperator substitute_params(const ParamBinding& binding) const;
};

TauPoly apply(const AlgebraicOperator& op, const TauPoly& p);

/// c * Psi0^{-1} (H - E0) Psi0 in FTI coordinates; c0 is zero by construction
/// and checked numerically by the oracle.
AlgebraicOperator gauge_operator(const ChartPtr& chart);
AlgebraicOperator gauge_operator_serial(const ChartPtr& chart);

/// E0 = rho.rho / 8 in the chart form.
ParamScalar ground_state_energy(const ModelChart& chart);

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;
    std::string difference;   // empty when pass
    std::string note;         // normalization remarks, e.g. a rescaled printed prefactor
};

std::vector<IdentityCheck> eta_tau_relations(const ChartPtr& chart);

/// The printed operator, from fixtures or closed-form coefficient formulas.
AlgebraicOperator reference_table(const ModelId& model);

struct OperatorMismatch {
    char kind = 'A';   // 'A', 'B' or 'c'
    int i = 0;         // 0-based
    int j = 0;
    TauPoly delta;     // computed - reference
};

std::vector<OperatorMismatch> diff_operators(const AlgebraicOperator& lhs, const AlgebraicOperator& rhs);
std::string mismatch_label(const OperatorMismatch& m);

struct PairingCheck {
    std::string label;
    bool pass = false;
};

/// Variable swap of the model (A_N: tau_i <-> tau_{N+1-i}; E6: tau1<->tau2, tau3<->tau4).
std::vector<int> involution_permutation(const ModelId& model);
std::vector<PairingCheck> involution_check(const ModelId& model, const AlgebraicOperator& op);

/// Weighted-degree bounds deg(A_ab) <= alpha_a + alpha_b, deg(B_a) <= alpha_a.
std::vector<std::string> degree_bound_violations(const AlgebraicOperator& op, const std::vector<int>& alpha);

} // namespace triginv

#endif
