#include "triginv/rational.hpp"

#include "triginv/errors.hpp"

#include <functional>

namespace triginv {

std::string to_pq_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    if (s.empty())
        throw ArgumentError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        bool negative = s.front() == '-';
        std::string body = (negative || s.front() == '+') ? s.substr(1) : s;
        dot = body.find('.');
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        std::size_t frac = body.size() - dot - 1;
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ArgumentError("malformed decimal literal: " + s);
        Integer num(digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        Rational q(num, den);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }

    if (s.front() == '+')
        s.erase(s.begin());
    const auto slash = s.find('/');
    const std::string numtext = s.substr(0, slash);
    const std::string dentext = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto valid_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t start = (t[0] == '-') ? 1 : 0;
        return start < t.size() && t.find_first_not_of("0123456789", start) == std::string::npos;
    };
    if (!valid_int(numtext) || !valid_int(dentext))
        throw ArgumentError("malformed rational literal: " + s);
    Integer den(dentext, 10);
    if (den == 0)
        throw ArgumentError("zero denominator in rational literal: " + s);
    Rational q(Integer(numtext, 10), den);
    q.canonicalize();
    return q;
}

std::size_t hash_rational(const Rational& q)
{
    // canonical form is assumed; hash the low limbs of numerator and denominator
    const auto num = q.get_num().get_si();
    const auto den = q.get_den().get_si();
    std::size_t h = std::hash<long>{}(num);
    h ^= std::hash<long>{}(den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(mpz_size(q.get_num_mpz_t())) * 31;
    return h;
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d)
{
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw ArgumentError("matrix product dimension mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const
{
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool RationalMatrix::is_symmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

bool RationalMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0)
                return false;
    return true;
}

RationalMatrix RationalMatrix::inverse() const
{
    if (rows_ != cols_)
        throw ArgumentError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0)
            ++pivot;
        if (pivot == n)
            throw ArgumentError("singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0)
                continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace triginv
