#ifndef TRIGINV_PARAM_SCALAR_HPP
#define TRIGINV_PARAM_SCALAR_HPP

#include "triginv/rational.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace triginv {

/// Ground-state exponent symbols; every coupling is expressed through them.
enum class Param : std::uint8_t { Nu = 0, Mu = 1, Nu2 = 2, Nu3 = 3 };

inline constexpr std::size_t kParamCount = 4;

const char* param_name(Param p);
std::optional<Param> parse_param(std::string_view name);

/// Rational bindings for (a subset of) the exponent symbols.
using ParamBinding = std::map<Param, Rational>;
/// Real bindings used by the floating-point oracle.
using ParamValues = std::map<Param, double>;

/// Gaussian rational re + i*im.
struct Gauss {
    Rational re;
    Rational im;

    Gauss() = default;
    Gauss(Rational r) : re(std::move(r)) {}
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Gauss& operator+=(const Gauss& o);
    Gauss& operator-=(const Gauss& o);
    Gauss operator*(const Gauss& o) const;
    Gauss operator-() const { return Gauss(-re, -im); }
    bool operator==(const Gauss& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Gauss& o) const { return !(*this == o); }
};

inline Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
inline Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }

/// Sparse polynomial in (nu, mu, nu2, nu3) with Gaussian-rational coefficients.
///
/// Terms are kept sorted by exponent tuple with no zero coefficients, so
/// structural equality is mathematical equality.
class ParamScalar {
public:
    using Exponent = std::array<std::uint8_t, kParamCount>;
    using Term = std::pair<Exponent, Gauss>;

    ParamScalar() = default;
    ParamScalar(long v);
    ParamScalar(const Rational& v);
    ParamScalar(const Gauss& v);

    static ParamScalar symbol(Param p);
    static ParamScalar imag_unit();

    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    bool is_constant() const;
    /// Coefficient of the parameter-free monomial.
    Gauss constant_term() const;
    /// Total degree in the exponent symbols (-1 for zero).
    int degree() const;

    const std::vector<Term>& terms() const { return terms_; }

    ParamScalar& operator+=(const ParamScalar& o);
    ParamScalar& operator-=(const ParamScalar& o);
    ParamScalar& operator*=(const ParamScalar& o);
    ParamScalar operator-() const;

    ParamScalar scaled(const Rational& q) const;
    ParamScalar scaled(const Gauss& g) const;
    /// Multiply by i.
    ParamScalar times_i() const;
    /// Real and imaginary parts as separate real-coefficient scalars.
    ParamScalar real_part() const;
    ParamScalar imag_part() const;

    /// Substitute the bound symbols; unbound ones stay symbolic.
    ParamScalar substitute(const ParamBinding& binding) const;
    /// Requires every occurring symbol to be bound (throws ArgumentError).
    Gauss evaluate(const ParamBinding& binding) const;
    std::complex<double> evaluate(const ParamValues& values) const;

    bool uses(Param p) const;

    bool operator==(const ParamScalar& o) const;
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    std::string to_string() const;

    /// Add coeff * monomial(exp) in place.
    void add_term(const Exponent& exp, const Gauss& coeff);

private:
    void normalize();
    std::vector<Term> terms_;
};

inline ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
inline ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
inline ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }

std::string gauss_to_string(const Gauss& g);

} // namespace triginv

#endif
