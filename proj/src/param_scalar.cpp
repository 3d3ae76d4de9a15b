#include "triginv/param_scalar.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace triginv {

namespace {

constexpr std::array<const char*, kParamCount> kNames = {"nu", "mu", "nu2", "nu3"};

bool exp_less(const ParamScalar::Exponent& a, const ParamScalar::Exponent& b)
{
    // graded order: total degree first, then lexicographic
    int da = 0, db = 0;
    for (std::size_t i = 0; i < kParamCount; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da < db;
    return a > b;
}

} // namespace

const char* param_name(Param p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Param> parse_param(std::string_view name)
{
    for (std::size_t i = 0; i < kParamCount; ++i)
        if (name == kNames[i])
            return static_cast<Param>(i);
    if (name == "nu1")
        return Param::Nu;
    return std::nullopt;
}

Gauss& Gauss::operator+=(const Gauss& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Gauss& Gauss::operator-=(const Gauss& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Gauss Gauss::operator*(const Gauss& o) const
{
    if (im == 0 && o.im == 0)
        return Gauss(re * o.re);
    return Gauss(re * o.re - im * o.im, re * o.im + im * o.re);
}

std::string gauss_to_string(const Gauss& g)
{
    if (g.im == 0)
        return g.re.get_str();
    if (g.re == 0)
        return g.im.get_str() + "*I";
    return "(" + g.re.get_str() + (g.im > 0 ? "+" : "") + g.im.get_str() + "*I)";
}

ParamScalar::ParamScalar(long v)
{
    if (v != 0)
        terms_.emplace_back(Exponent{}, Gauss(Rational(v)));
}

ParamScalar::ParamScalar(const Rational& v)
{
    if (v != 0)
        terms_.emplace_back(Exponent{}, Gauss(v));
}

ParamScalar::ParamScalar(const Gauss& v)
{
    if (!v.is_zero())
        terms_.emplace_back(Exponent{}, v);
}

ParamScalar ParamScalar::symbol(Param p)
{
    ParamScalar s;
    Exponent e{};
    e[static_cast<std::size_t>(p)] = 1;
    s.terms_.emplace_back(e, Gauss(Rational(1)));
    return s;
}

ParamScalar ParamScalar::imag_unit() { return ParamScalar(Gauss(Rational(0), Rational(1))); }

bool ParamScalar::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

bool ParamScalar::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exponent{});
}

Gauss ParamScalar::constant_term() const
{
    for (const auto& t : terms_)
        if (t.first == Exponent{})
            return t.second;
    return Gauss();
}

int ParamScalar::degree() const
{
    int d = -1;
    for (const auto& t : terms_) {
        int s = 0;
        for (auto e : t.first)
            s += e;
        d = std::max(d, s);
    }
    return d;
}

void ParamScalar::normalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return exp_less(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }), out.end());
    terms_ = std::move(out);
}

void ParamScalar::add_term(const Exponent& exp, const Gauss& coeff)
{
    if (coeff.is_zero())
        return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, const Exponent& e) { return exp_less(t.first, e); });
    if (it != terms_.end() && it->first == exp) {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    } else {
        terms_.insert(it, Term(exp, coeff));
    }
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o)
{
    if (o.terms_.empty())
        return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && exp_less(a->first, b->first))) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || exp_less(b->first, a->first)) {
            out.push_back(*b++);
        } else {
            Gauss s = a->second + b->second;
            if (!s.is_zero())
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o)
{
    return *this += -o;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& o)
{
    if (terms_.empty() || o.terms_.empty()) {
        terms_.clear();
        return *this;
    }
    if (o.is_constant())
        return *this = scaled(o.terms_[0].second);
    if (is_constant())
        return *this = o.scaled(terms_[0].second);
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& x : terms_)
        for (const auto& y : o.terms_) {
            Exponent e{};
            for (std::size_t i = 0; i < kParamCount; ++i)
                e[i] = static_cast<std::uint8_t>(x.first[i] + y.first[i]);
            out.emplace_back(e, x.second * y.second);
        }
    terms_ = std::move(out);
    normalize();
    return *this;
}

ParamScalar ParamScalar::operator-() const
{
    ParamScalar r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

ParamScalar ParamScalar::scaled(const Rational& q) const
{
    if (q == 0)
        return {};
    ParamScalar r = *this;
    for (auto& t : r.terms_) {
        t.second.re *= q;
        t.second.im *= q;
    }
    return r;
}

ParamScalar ParamScalar::scaled(const Gauss& g) const
{
    if (g.is_zero())
        return {};
    if (g.is_real())
        return scaled(g.re);
    ParamScalar r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Gauss v = t.second * g;
        if (!v.is_zero())
            r.terms_.emplace_back(t.first, std::move(v));
    }
    return r;
}

ParamScalar ParamScalar::times_i() const
{
    ParamScalar r = *this;
    for (auto& t : r.terms_) {
        Rational re = -t.second.im;
        t.second.im = t.second.re;
        t.second.re = re;
    }
    return r;
}

ParamScalar ParamScalar::real_part() const
{
    ParamScalar r;
    for (const auto& t : terms_)
        if (t.second.re != 0)
            r.terms_.emplace_back(t.first, Gauss(t.second.re));
    return r;
}

ParamScalar ParamScalar::imag_part() const
{
    ParamScalar r;
    for (const auto& t : terms_)
        if (t.second.im != 0)
            r.terms_.emplace_back(t.first, Gauss(t.second.im));
    return r;
}

ParamScalar ParamScalar::substitute(const ParamBinding& binding) const
{
    if (binding.empty())
        return *this;
    ParamScalar r;
    for (const auto& t : terms_) {
        Exponent e = t.first;
        Rational factor = 1;
        for (const auto& [p, v] : binding) {
            auto& k = e[static_cast<std::size_t>(p)];
            if (k == 0)
                continue;
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), v.get_num_mpz_t(), k);
            mpz_pow_ui(pw.get_den_mpz_t(), v.get_den_mpz_t(), k);
            factor *= pw;
            k = 0;
        }
        if (factor == 0)
            continue;
        Gauss c = t.second;
        c.re *= factor;
        c.im *= factor;
        r.terms_.emplace_back(e, std::move(c));
    }
    r.normalize();
    return r;
}

Gauss ParamScalar::evaluate(const ParamBinding& binding) const
{
    ParamScalar s = substitute(binding);
    if (!s.is_constant())
        throw ArgumentError("unbound coupling symbol in " + to_string());
    return s.constant_term();
}

std::complex<double> ParamScalar::evaluate(const ParamValues& values) const
{
    std::complex<double> acc = 0;
    for (const auto& t : terms_) {
        double m = 1;
        for (std::size_t i = 0; i < kParamCount; ++i) {
            if (t.first[i] == 0)
                continue;
            auto it = values.find(static_cast<Param>(i));
            if (it == values.end())
                throw ArgumentError(std::string("unbound coupling symbol ") + kNames[i]);
            m *= std::pow(it->second, t.first[i]);
        }
        acc += m * std::complex<double>(t.second.re.get_d(), t.second.im.get_d());
    }
    return acc;
}

bool ParamScalar::uses(Param p) const
{
    const auto i = static_cast<std::size_t>(p);
    return std::any_of(terms_.begin(), terms_.end(), [i](const Term& t) { return t.first[i] != 0; });
}

bool ParamScalar::operator==(const ParamScalar& o) const
{
    if (terms_.size() != o.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

std::string ParamScalar::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = gauss_to_string(c);
        bool monomial = e != Exponent{};
        if (!first)
            os << (cs[0] == '-' ? " - " : " + ");
        else if (cs[0] == '-')
            os << "-";
        if (cs[0] == '-')
            cs.erase(0, 1);
        first = false;
        if (!monomial || cs != "1")
            os << cs;
        bool need_star = !monomial || cs != "1";
        for (std::size_t i = 0; i < kParamCount; ++i) {
            if (e[i] == 0)
                continue;
            os << (need_star ? "*" : "") << kNames[i];
            if (e[i] > 1)
                os << "^" << int(e[i]);
            need_star = true;
        }
    }
    return os.str();
}

} // namespace triginv
