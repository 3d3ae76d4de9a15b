#ifndef TRIGINV_RATIONAL_HPP
#define TRIGINV_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace triginv {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q >= 1 (zero is "0/1").
std::string to_pq_string(const Rational& q);

/// Accepts "p/q", "p" or a decimal literal such as "0.5" / "-1.25".
Rational parse_rational(std::string_view text);

std::size_t hash_rational(const Rational& q);

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Dense rational matrix, row-major; small sizes only (charts, Gram matrices).
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(const std::vector<Rational>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    bool operator==(const RationalMatrix& rhs) const;

    bool is_symmetric() const;
    bool is_diagonal() const;

    /// Gauss-Jordan inverse; throws ArgumentError when singular.
    RationalMatrix inverse() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

} // namespace triginv

#endif
