#ifndef TRIGINV_TAU_POLY_HPP
#define TRIGINV_TAU_POLY_HPP

#include "triginv/param_scalar.hpp"
#include "triginv/rootdata.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace triginv {

/// Sparse polynomial in tau_1..tau_r over ParamScalar.
class TauPoly {
public:
    using Exponent = std::array<std::uint8_t, kMaxRank>;

    TauPoly() = default;
    explicit TauPoly(int nvars);

    static TauPoly constant(int nvars, const ParamScalar& c);
    static TauPoly variable(int nvars, int i);
    static TauPoly monomial(int nvars, const Exponent& e, const ParamScalar& c = ParamScalar(1));

    int nvars() const { return nvars_; }
    const std::map<Exponent, ParamScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    ParamScalar coefficient(const Exponent& e) const;

    void add_term(const Exponent& e, const ParamScalar& c);

    TauPoly& operator+=(const TauPoly& o);
    TauPoly& operator-=(const TauPoly& o);
    TauPoly& operator*=(const TauPoly& o);
    TauPoly operator-() const;
    TauPoly scaled(const ParamScalar& c) const;
    TauPoly scaled(const Rational& q) const;

    TauPoly derivative(int i) const;
    TauPoly substitute_params(const ParamBinding& binding) const;
    /// Replace tau_i by images[i]; all images share one arity.
    TauPoly substitute_vars(const std::vector<TauPoly>& images) const;
    /// tau_i -> tau_{perm[i]}
    TauPoly permuted(const std::vector<int>& perm) const;
    /// tau_i -> s_i tau_i
    TauPoly rescaled(const std::vector<Rational>& s) const;

    /// Largest sum alpha_a p_a over the support; -1 for zero.
    int weighted_degree(const std::vector<int>& alpha) const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& tau, const ParamValues& params) const;
    Gauss evaluate_exact(const std::vector<Rational>& tau, const ParamBinding& params) const;

    bool operator==(const TauPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const TauPoly& o) const { return !(*this == o); }

    /// e.g. "-4/3*t1^2 + 20*t2"; prefix names the variables.
    std::string to_string(std::string_view prefix = "t") const;

private:
    int nvars_ = 0;
    std::map<Exponent, ParamScalar> terms_;
};

inline TauPoly operator+(TauPoly a, const TauPoly& b) { return a += b; }
inline TauPoly operator-(TauPoly a, const TauPoly& b) { return a -= b; }
inline TauPoly operator*(TauPoly a, const TauPoly& b) { return a *= b; }

std::string monomial_string(const TauPoly::Exponent& e, int nvars, std::string_view prefix = "t");

/// Parses sums of products of rationals, parameters (nu, mu, nu2, nu3),
/// variables <prefix><k> (1-based), parentheses and integer powers.
/// Juxtaposition multiplies. Division only by constants.
TauPoly parse_tau_poly(std::string_view text, int nvars, std::string_view prefix = "t");

} // namespace triginv

#endif
