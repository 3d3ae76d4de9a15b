#include "triginv/tau_poly.hpp"

#include "triginv/errors.hpp"

#include <cctype>
#include <sstream>

namespace triginv {

TauPoly::TauPoly(int nvars) : nvars_(nvars)
{
    if (nvars < 0 || nvars > kMaxRank)
        throw ArgumentError("TauPoly arity out of range");
}

TauPoly TauPoly::constant(int nvars, const ParamScalar& c)
{
    TauPoly p(nvars);
    p.add_term(Exponent{}, c);
    return p;
}

TauPoly TauPoly::variable(int nvars, int i)
{
    if (i < 0 || i >= nvars)
        throw ArgumentError("variable index out of range");
    Exponent e{};
    e[i] = 1;
    return monomial(nvars, e);
}

TauPoly TauPoly::monomial(int nvars, const Exponent& e, const ParamScalar& c)
{
    TauPoly p(nvars);
    p.add_term(e, c);
    return p;
}

bool TauPoly::is_real() const
{
    for (const auto& [e, c] : terms_)
        if (!c.is_real())
            return false;
    return true;
}

ParamScalar TauPoly::coefficient(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? ParamScalar() : it->second;
}

void TauPoly::add_term(const Exponent& e, const ParamScalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

TauPoly& TauPoly::operator+=(const TauPoly& o)
{
    if (o.nvars_ != nvars_)
        throw ArgumentError("TauPoly arity mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

TauPoly& TauPoly::operator-=(const TauPoly& o)
{
    if (o.nvars_ != nvars_)
        throw ArgumentError("TauPoly arity mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

TauPoly& TauPoly::operator*=(const TauPoly& o)
{
    if (o.nvars_ != nvars_)
        throw ArgumentError("TauPoly arity mismatch");
    TauPoly out(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponent e{};
            for (int i = 0; i < nvars_; ++i) {
                const int s = e1[i] + e2[i];
                if (s > 255)
                    throw ArgumentError("TauPoly exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            out.add_term(e, c1 * c2);
        }
    *this = std::move(out);
    return *this;
}

TauPoly TauPoly::operator-() const
{
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, -c);
    return out;
}

TauPoly TauPoly::scaled(const ParamScalar& s) const
{
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        out.add_term(e, c * s);
    return out;
}

TauPoly TauPoly::scaled(const Rational& q) const
{
    TauPoly out(nvars_);
    if (q == 0)
        return out;
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, c.scaled(q));
    return out;
}

TauPoly TauPoly::derivative(int i) const
{
    if (i < 0 || i >= nvars_)
        throw ArgumentError("derivative index out of range");
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0)
            continue;
        Exponent d = e;
        d[i] -= 1;
        out.add_term(d, c.scaled(Rational(e[i])));
    }
    return out;
}

TauPoly TauPoly::substitute_params(const ParamBinding& binding) const
{
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        out.add_term(e, c.substitute(binding));
    return out;
}

TauPoly TauPoly::substitute_vars(const std::vector<TauPoly>& images) const
{
    if (static_cast<int>(images.size()) != nvars_)
        throw ArgumentError("substitute_vars needs one image per variable");
    const int target = images.empty() ? 0 : images[0].nvars();
    // powers[i][k] = images[i]^k, built on demand
    std::vector<std::vector<TauPoly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i)
        powers[i].push_back(TauPoly::constant(target, ParamScalar(1)));
    TauPoly out(target);
    for (const auto& [e, c] : terms_) {
        TauPoly m = TauPoly::constant(target, c);
        for (int i = 0; i < nvars_; ++i) {
            while (static_cast<int>(powers[i].size()) <= e[i])
                powers[i].push_back(powers[i].back() * images[i]);
            if (e[i] > 0)
                m *= powers[i][e[i]];
        }
        out += m;
    }
    return out;
}

TauPoly TauPoly::permuted(const std::vector<int>& perm) const
{
    if (static_cast<int>(perm.size()) != nvars_)
        throw ArgumentError("permutation size mismatch");
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent p{};
        for (int i = 0; i < nvars_; ++i)
            p[perm[i]] = e[i];
        out.add_term(p, c);
    }
    return out;
}

TauPoly TauPoly::rescaled(const std::vector<Rational>& s) const
{
    if (static_cast<int>(s.size()) != nvars_)
        throw ArgumentError("rescale size mismatch");
    TauPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        Rational f = 1;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k)
                f *= s[i];
        out.add_term(e, c.scaled(f));
    }
    return out;
}

int TauPoly::weighted_degree(const std::vector<int>& alpha) const
{
    if (static_cast<int>(alpha.size()) != nvars_)
        throw ArgumentError("characteristic vector size mismatch");
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int i = 0; i < nvars_; ++i)
            d += alpha[i] * e[i];
        best = std::max(best, d);
    }
    return best;
}

std::complex<double> TauPoly::evaluate(const std::vector<std::complex<double>>& tau, const ParamValues& params) const
{
    if (static_cast<int>(tau.size()) != nvars_)
        throw ArgumentError("evaluation point arity mismatch");
    std::complex<double> sum = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> m = c.evaluate(params);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k)
                m *= tau[i];
        sum += m;
    }
    return sum;
}

Gauss TauPoly::evaluate_exact(const std::vector<Rational>& tau, const ParamBinding& params) const
{
    if (static_cast<int>(tau.size()) != nvars_)
        throw ArgumentError("evaluation point arity mismatch");
    Gauss sum;
    for (const auto& [e, c] : terms_) {
        Rational m = 1;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k)
                m *= tau[i];
        sum += c.evaluate(params) * Gauss(m);
    }
    return sum;
}

std::string monomial_string(const TauPoly::Exponent& e, int nvars, std::string_view prefix)
{
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0)
            continue;
        if (!first)
            os << "*";
        first = false;
        os << prefix << (i + 1);
        if (e[i] > 1)
            os << "^" << int(e[i]);
    }
    return first ? "1" : os.str();
}

std::string TauPoly::to_string(std::string_view prefix) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // highest total degree first reads more naturally
    std::vector<const std::pair<const Exponent, ParamScalar>*> order;
    for (const auto& t : terms_)
        order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        int da = 0, db = 0;
        for (int i = 0; i < nvars_; ++i) {
            da += a->first[i];
            db += b->first[i];
        }
        if (da != db)
            return da > db;
        return a->first > b->first;
    });
    for (auto* t : order) {
        const bool unit_mono = t->first == Exponent{};
        std::string cs = t->second.to_string();
        const bool compound = t->second.terms().size() > 1;
        bool negative = !compound && cs[0] == '-';
        if (negative)
            cs.erase(0, 1);
        if (compound)
            cs = "(" + cs + ")";
        if (!first)
            os << (negative ? " - " : " + ");
        else if (negative)
            os << "-";
        first = false;
        if (unit_mono)
            os << cs;
        else if (cs == "1")
            os << monomial_string(t->first, nvars_, prefix);
        else
            os << cs << "*" << monomial_string(t->first, nvars_, prefix);
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, int nvars, std::string_view prefix)
        : s_(text), nvars_(nvars), prefix_(prefix)
    {
    }

    TauPoly parse()
    {
        TauPoly p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ArgumentError("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                            std::string(s_) + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        const char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.';
    }

    TauPoly expr()
    {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        TauPoly acc = term();
        if (neg)
            acc = -acc;
        for (;;) {
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-'))
                break;
            const bool minus = s_[pos_] == '-';
            ++pos_;
            TauPoly t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    TauPoly term()
    {
        TauPoly acc = power();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                acc *= power();
            } else if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                TauPoly d = power();
                if (d.terms().size() != 1 || d.terms().begin()->first != TauPoly::Exponent{} ||
                    !d.terms().begin()->second.is_constant())
                    fail("division by a non-constant");
                const Gauss g = d.terms().begin()->second.constant_term();
                if (!g.is_real() || g.re == 0)
                    fail("division by zero or complex constant");
                acc = acc.scaled(Rational(1 / g.re));
            } else if (starts_factor()) {
                acc *= power();
            } else {
                break;
            }
        }
        return acc;
    }

    TauPoly power()
    {
        TauPoly base = primary();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            const int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
            TauPoly r = TauPoly::constant(nvars_, ParamScalar(1));
            for (int i = 0; i < k; ++i)
                r *= base;
            return r;
        }
        return base;
    }

    TauPoly primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            TauPoly inner = expr();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')')
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
                ++pos_;
            return TauPoly::constant(nvars_, ParamScalar(parse_rational(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (auto p = parse_param(name))
                return TauPoly::constant(nvars_, ParamScalar::symbol(*p));
            if (name.substr(0, prefix_.size()) == prefix_ && name.size() > prefix_.size()) {
                const auto digits = name.substr(prefix_.size());
                bool ok = true;
                for (char d : digits)
                    ok = ok && std::isdigit(static_cast<unsigned char>(d));
                if (ok) {
                    const int k = std::stoi(std::string(digits));
                    if (k < 1 || k > nvars_)
                        fail("variable index out of range");
                    return TauPoly::variable(nvars_, k - 1);
                }
            }
            if (name == "i")
                return TauPoly::constant(nvars_, ParamScalar::imag_unit());
            fail("unknown identifier '" + std::string(name) + "'");
        }
        fail("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int nvars_;
    std::string_view prefix_;
};

} // namespace

TauPoly parse_tau_poly(std::string_view text, int nvars, std::string_view prefix)
{
    return PolyParser(text, nvars, prefix).parse();
}

} // namespace triginv
