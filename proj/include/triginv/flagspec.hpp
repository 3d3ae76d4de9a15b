#ifndef TRIGINV_FLAGSPEC_HPP
#define TRIGINV_FLAGSPEC_HPP

#include "triginv/gaugeform.hpp"
#include "triginv/tau_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace triginv {

/// Flag space P_n = span{tau^p : sum alpha_a p_a <= n}.
struct FlagSpec {
    std::vector<int> alpha;
    int n = 0;

    /// Exponents ordered by (weighted degree, lex).
    std::vector<TauPoly::Exponent> basis() const;
    std::size_t dimension() const { return basis().size(); }
};

int weighted_degree(const TauPoly::Exponent& e, const std::vector<int>& alpha);

/// sum_k c_k(tau) d^k, k a derivative multi-index.
class PolyOperator {
public:
    using Index = TauPoly::Exponent;

    PolyOperator() = default;
    explicit PolyOperator(int nvars) : nvars_(nvars) {}

    static PolyOperator identity(int nvars);
    static PolyOperator multiplication(const TauPoly& c);
    /// c * d_i
    static PolyOperator derivative(int nvars, int i, const TauPoly& c);
    static PolyOperator derivative(int nvars, int i);
    /// sum A_ab d_a d_b + sum B_a d_a + c0
    static PolyOperator from_algebraic(const AlgebraicOperator& op);

    int nvars() const { return nvars_; }
    const std::map<Index, TauPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Highest total derivative order (-1 for zero).
    int order() const;
    TauPoly coefficient(const Index& k) const;

    void add_term(const Index& k, const TauPoly& c);
    PolyOperator& operator+=(const PolyOperator& o);
    PolyOperator& operator-=(const PolyOperator& o);
    PolyOperator scaled(const ParamScalar& s) const;
    PolyOperator substitute_params(const ParamBinding& binding) const;

    bool operator==(const PolyOperator& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const PolyOperator& o) const { return !(*this == o); }

    /// e.g. "(t1)*d1 + (-1/3)*1"
    std::string to_string() const;

private:
    int nvars_ = 0;
    std::map<Index, TauPoly> terms_;
};

inline PolyOperator operator+(PolyOperator a, const PolyOperator& b) { return a += b; }
inline PolyOperator operator-(PolyOperator a, const PolyOperator& b) { return a -= b; }

TauPoly apply(const PolyOperator& op, const TauPoly& p);
/// Back to the symmetric second-order form; ArgumentError for order > 2 or a
/// non-constant zeroth-order coefficient.
AlgebraicOperator to_algebraic(const PolyOperator& op, const std::string& model);
/// op1 o op2 via the Leibniz rule.
PolyOperator compose(const PolyOperator& op1, const PolyOperator& op2);

struct FlagReport {
    bool pass = true;
    std::vector<int> alpha;
    int n_max = 0;
    std::size_t checked = 0;
    // first violation in basis order
    std::string witness;
    std::string offending_term;
    int witness_degree = 0;
    int image_degree = 0;
};

FlagReport check_flag(const PolyOperator& op, const std::vector<int>& alpha, int n_max);
FlagReport check_flag(const AlgebraicOperator& op, const std::vector<int>& alpha, int n_max);
FlagReport check_flag_serial(const PolyOperator& op, const std::vector<int>& alpha, int n_max);

/// Smallest alpha (by sum, then lex) with entries <= entry_bound that passes
/// check_flag up to n_test. Bounded evidence, not a proof of minimality.
std::optional<std::vector<int>> min_charvector_search(const PolyOperator& op, int entry_bound, int n_test);

/// Matrix of op on flag.basis(); column j holds the image of basis[j].
/// Every symbol occurring in op must be bound (ArgumentError otherwise).
RationalMatrix operator_matrix(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding);
RationalMatrix operator_matrix_serial(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding);

struct Eigenpair {
    Rational value;
    TauPoly poly;
    int degree = 0;                  // weighted degree of the leading block
    TauPoly::Exponent leading{};     // quantum numbers, when the block is triangular
    bool has_leading = false;
    bool defective = false;          // back-substitution hit an inconsistent resonant block
};

struct SpectrumResult {
    std::vector<Eigenpair> eigenpairs;
    std::vector<std::string> resonances;
    std::vector<std::string> irrational;   // blocks with eigenvalues outside Q
    bool flag_ok = true;
};

/// Exact spectrum on the flag space from the degree-diagonal blocks.
SpectrumResult spectrum(const PolyOperator& op, const FlagSpec& flag, const ParamBinding& binding);

/// Characteristic polynomial det(x I - M), coefficients from x^0 upwards.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);
/// Rational roots with multiplicity; leftover factor degree returned in `rest`.
std::vector<Rational> rational_roots(const std::vector<Rational>& poly, int& rest);

struct QuadraticFit {
    bool exact = false;
    std::size_t points = 0;
    // value = sum_{a<=b} quad[a][b] p_a p_b + sum_a lin[a] p_a + constant
    std::vector<std::vector<Rational>> quad;
    std::vector<Rational> lin;
    Rational constant;
    Rational residual;   // sum of squared residuals
    std::string formula;
};

/// Exact least squares of eigenvalues against their quantum numbers.
QuadraticFit fit_quadratic(const std::vector<TauPoly::Exponent>& quantum, const std::vector<Rational>& values,
                           int nvars);

struct NamedOperator {
    std::string name;
    PolyOperator op;
};

/// "gl": J^-_i, J^0_ij, J^0, J^+_i for d variables; "g2": L1..L7 and T (d must be 2).
std::vector<NamedOperator> hidden_generators(const std::string& algebra_id, int d, const Rational& n);

struct InvarianceReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> witnesses;
};

InvarianceReport verify_invariant_subspace(const std::vector<NamedOperator>& generators, const FlagSpec& flag);

struct DecompositionReport {
    bool pass = false;                  // printed combination equals the target
    bool second_order_match = false;    // products part alone reproduces the target's symbol
    bool l4_absent = false;
    std::vector<std::string> differences;   // per differing coefficient
    PolyOperator combination;
    // first-order generator coefficients that make the products part equal the
    // target, when they exist; L4 must not be needed
    bool refit_exists = false;
    std::vector<std::pair<std::string, ParamScalar>> refit;
    std::string refit_text;
};

/// Expands the printed g^(2) combination at n = 0 and compares it with `target`.
DecompositionReport verify_g2_decomposition(const AlgebraicOperator& target);
/// The printed combination itself, and its second-order (products) part.
PolyOperator g2_decomposition();
PolyOperator g2_decomposition_products();

} // namespace triginv

#endif
