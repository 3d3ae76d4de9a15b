#include "triginv/flagspec.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <sstream>

namespace triginv {

int weighted_degree(const TauPoly::Exponent& e, const std::vector<int>& alpha)
{
    int d = 0;
    for (std::size_t a = 0; a < alpha.size(); ++a)
        d += alpha[a] * e[a];
    return d;
}

std::vector<TauPoly::Exponent> FlagSpec::basis() const
{
    const int r = static_cast<int>(alpha.size());
    for (int a : alpha)
        if (a <= 0)
            throw ArgumentError("characteristic vector entries must be positive");
    std::vector<TauPoly::Exponent> out;
    if (n < 0)
        return out;
    TauPoly::Exponent e{};
    while (true) {
        out.push_back(e);
        int a = 0;
        for (; a < r; ++a) {
            e[a] += 1;
            if (weighted_degree(e, alpha) <= n)
                break;
            e[a] = 0;
        }
        if (a == r)
            break;
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        const int dx = weighted_degree(x, alpha), dy = weighted_degree(y, alpha);
        return dx != dy ? dx < dy : x < y;
    });
    return out;
}

PolyOperator PolyOperator::identity(int nvars)
{
    PolyOperator op(nvars);
    op.add_term(Index{}, TauPoly::constant(nvars, ParamScalar(1)));
    return op;
}

PolyOperator PolyOperator::multiplication(const TauPoly& c)
{
    PolyOperator op(c.nvars());
    op.add_term(Index{}, c);
    return op;
}

PolyOperator PolyOperator::derivative(int nvars, int i, const TauPoly& c)
{
    if (i < 0 || i >= nvars || c.nvars() != nvars)
        throw ArgumentError("derivative index or coefficient arity out of range");
    PolyOperator op(nvars);
    Index k{};
    k[i] = 1;
    op.add_term(k, c);
    return op;
}

PolyOperator PolyOperator::derivative(int nvars, int i)
{
    return derivative(nvars, i, TauPoly::constant(nvars, ParamScalar(1)));
}

PolyOperator PolyOperator::from_algebraic(const AlgebraicOperator& op)
{
    const int r = op.nvars;
    PolyOperator out(r);
    for (int a = 0; a < r; ++a) {
        Index k{};
        k[a] = 1;
        out.add_term(k, op.B[a]);
        for (int b = a; b < r; ++b) {
            Index kk{};
            kk[a] += 1;
            kk[b] += 1;
            out.add_term(kk, a == b ? op.A[a][a] : op.A[a][b] + op.A[b][a]);
        }
    }
    if (!op.c0.is_zero())
        out.add_term(Index{}, TauPoly::constant(r, op.c0));
    return out;
}

int PolyOperator::order() const
{
    int best = -1;
    for (const auto& [k, c] : terms_) {
        int s = 0;
        for (auto v : k)
            s += v;
        best = std::max(best, s);
    }
    return best;
}

TauPoly PolyOperator::coefficient(const Index& k) const
{
    auto it = terms_.find(k);
    return it == terms_.end() ? TauPoly(nvars_) : it->second;
}

void PolyOperator::add_term(const Index& k, const TauPoly& c)
{
    if (c.nvars() != nvars_)
        throw ArgumentError("operator coefficient arity mismatch");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

PolyOperator& PolyOperator::operator+=(const PolyOperator& o)
{
    if (o.nvars_ != nvars_)
        throw ArgumentError("operator arity mismatch");
    for (const auto& [k, c] : o.terms_)
        add_term(k, c);
    return *this;
}

PolyOperator& PolyOperator::operator-=(const PolyOperator& o)
{
    if (o.nvars_ != nvars_)
        throw ArgumentError("operator arity mismatch");
    for (const auto& [k, c] : o.terms_)
        add_term(k, -c);
    return *this;
}

PolyOperator PolyOperator::scaled(const ParamScalar& s) const
{
    PolyOperator out(nvars_);
    for (const auto& [k, c] : terms_)
        out.add_term(k, c.scaled(s));
    return out;
}

PolyOperator PolyOperator::substitute_params(const ParamBinding& binding) const
{
    PolyOperator out(nvars_);
    for (const auto& [k, c] : terms_)
        out.add_term(k, c.substitute_params(binding));
    return out;
}

std::string PolyOperator::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // highest order first
    std::vector<std::pair<Index, const TauPoly*>> items;
    for (const auto& [k, c] : terms_)
        items.emplace_back(k, &c);
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        int sx = 0, sy = 0;
        for (auto v : x.first)
            sx += v;
        for (auto v : y.first)
            sy += v;
        return sx != sy ? sx > sy : x.first > y.first;
    });
    for (const auto& [k, c] : items) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c->to_string() << ")";
        std::string d;
        for (int i = 0; i < nvars_; ++i)
            for (int j = 0; j < k[i]; ++j)
                d += "d" + std::to_string(i + 1);
        if (!d.empty())
            os << "*" << d;
    }
    return os.str();
}

TauPoly apply(const PolyOperator& op, const TauPoly& p)
{
    if (p.nvars() != op.nvars())
        throw ArgumentError("operator and polynomial arity differ");
    TauPoly out(op.nvars());
    for (const auto& [k, c] : op.terms()) {
        TauPoly q = p;
        for (int i = 0; i < op.nvars() && !q.is_zero(); ++i)
            for (int j = 0; j < k[i] && !q.is_zero(); ++j)
                q = q.derivative(i);
        if (!q.is_zero())
            out += c * q;
    }
    return out;
}

AlgebraicOperator to_algebraic(const PolyOperator& op, const std::string& model)
{
    if (op.order() > 2)
        throw ArgumentError("operator has order above two");
    const int r = op.nvars();
    AlgebraicOperator out = AlgebraicOperator::zero(model, r);
    for (const auto& [k, c] : op.terms()) {
        std::vector<int> idx;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < k[i]; ++j)
                idx.push_back(i);
        if (idx.empty()) {
            if (c.weighted_degree(std::vector<int>(static_cast<std::size_t>(r), 1)) > 0)
                throw ArgumentError("zeroth-order coefficient is not constant");
            out.c0 = c.coefficient(TauPoly::Exponent{});
        } else if (idx.size() == 1) {
            out.B[idx[0]] = c;
        } else if (idx[0] == idx[1]) {
            out.A[idx[0]][idx[0]] = c;
        } else {
            const TauPoly half = c.scaled(make_rational(1, 2));
            out.A[idx[0]][idx[1]] = half;
            out.A[idx[1]][idx[0]] = half;
        }
    }
    return out;
}

namespace {

// all multi-indices below k (inclusive), with the product of binomials
void sub_indices(const PolyOperator::Index& k, int nvars, std::vector<std::pair<PolyOperator::Index, Integer>>& out)
{
    out.clear();
    PolyOperator::Index j{};
    while (true) {
        Integer coeff = 1;
        for (int i = 0; i < nvars; ++i) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), k[i], j[i]);
            coeff *= b;
        }
        out.emplace_back(j, coeff);
        int i = 0;
        for (; i < nvars; ++i) {
            if (j[i] < k[i]) {
                ++j[i];
                break;
            }
            j[i] = 0;
        }
        if (i == nvars)
            break;
    }
}

} // namespace

PolyOperator compose(const PolyOperator& op1, const PolyOperator& op2)
{
    if (op1.nvars() != op2.nvars())
        throw ArgumentError("operator arity mismatch");
    const int r = op1.nvars();
    PolyOperator out(r);
    std::vector<std::pair<PolyOperator::Index, Integer>> subs;
    for (const auto& [a, c] : op1.terms()) {
        sub_indices(a, r, subs);
        for (const auto& [b, d] : op2.terms())
            for (const auto& [k, binom] : subs) {
                // c d^a (d f) = sum_k binom(a, k) c (d^k d) d^{a - k + b} f
                TauPoly dk = d;
                for (int i = 0; i < r && !dk.is_zero(); ++i)
                    for (int j = 0; j < k[i] && !dk.is_zero(); ++j)
                        dk = dk.derivative(i);
                if (dk.is_zero())
                    continue;
                PolyOperator::Index idx{};
                for (int i = 0; i < r; ++i)
                    idx[i] = static_cast<std::uint8_t>(a[i] - k[i] + b[i]);
                out.add_term(idx, (c * dk).scaled(Rational(binom)));
            }
    }
    return out;
}

namespace {

struct FlagCheck {
    bool ok = true;
    int image_degree = -1;
    std::string offending;
};

FlagCheck check_one(const PolyOperator& op, const TauPoly::Exponent& e, const std::vector<int>& alpha)
{
    const int r = op.nvars();
    const TauPoly img = apply(op, TauPoly::monomial(r, e));
    FlagCheck fc;
    fc.image_degree = img.weighted_degree(alpha);
    const int d = weighted_degree(e, alpha);
    if (fc.image_degree > d) {
        fc.ok = false;
        for (const auto& [m, c] : img.terms())
            if (weighted_degree(m, alpha) == fc.image_degree) {
                fc.offending = "(" + c.to_string() + ")*" + monomial_string(m, r);
                break;
            }
    }
    return fc;
}

void validate_alpha(const PolyOperator& op, const std::vector<int>& alpha)
{
    if (static_cast<int>(alpha.size()) != op.nvars())
        throw ArgumentError("characteristic vector length does not match the operator");
    for (int a : alpha)
        if (a <= 0)
            throw ArgumentError("characteristic vector entries must be positive");
}

FlagReport make_report(const PolyOperator& op, const std::vector<int>& alpha, int n_max,
                       const std::vector<TauPoly::Exponent>& basis, const std::vector<FlagCheck>& checks,
                       std::size_t checked)
{
    FlagReport rep;
    rep.alpha = alpha;
    rep.n_max = n_max;
    rep.checked = checked;
    for (std::size_t i = 0; i < checks.size(); ++i)
        if (!checks[i].ok) {
            rep.pass = false;
            rep.witness = monomial_string(basis[i], op.nvars());
            rep.witness_degree = weighted_degree(basis[i], alpha);
            rep.image_degree = checks[i].image_degree;
            rep.offending_term = checks[i].offending;
            break;
        }
    return rep;
}

} // namespace

FlagReport check_flag(const PolyOperator& op, const std::vector<int>& alpha, int n_max)
{
    validate_alpha(op, alpha);
    const auto basis = FlagSpec{alpha, n_max}.basis();
    std::vector<FlagCheck> checks(basis.size());
    const auto n = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i)
        checks[i] = check_one(op, basis[i], alpha);
    return make_report(op, alpha, n_max, basis, checks, basis.size());
}

FlagReport check_flag(const AlgebraicOperator& op, const std::vector<int>& alpha, int n_max)
{
    return check_flag(PolyOperator::from_algebraic(op), alpha, n_max);
}

FlagReport check_flag_serial(const PolyOperator& op, const std::vector<int>& alpha, int n_max)
{
    validate_alpha(op, alpha);
    const auto basis = FlagSpec{alpha, n_max}.basis();
    std::vector<FlagCheck> checks;
    for (const auto& e : basis) {
        checks.push_back(check_one(op, e, alpha));
        if (!checks.back().ok)
            break;
    }
    return make_report(op, alpha, n_max, basis, checks, checks.size());
}

std::optional<std::vector<int>> min_charvector_search(const PolyOperator& op, int entry_bound, int n_test)
{
    if (entry_bound < 1)
        throw ArgumentError("entry bound must be at least 1");
    const int r = op.nvars();
    std::vector<std::vector<int>> candidates;
    std::vector<int> alpha(r, 1);
    while (true) {
        candidates.push_back(alpha);
        int a = r - 1;
        for (; a >= 0; --a) {
            if (alpha[a] < entry_bound) {
                ++alpha[a];
                break;
            }
            alpha[a] = 1;
        }
        if (a < 0)
            break;
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        int sx = 0, sy = 0;
        for (int v : x)
            sx += v;
        for (int v : y)
            sy += v;
        return sx != sy ? sx < sy : x < y;
    });
    for (const auto& c : candidates)
        if (check_flag_serial(op, c, n_test).pass)
            return c;
    return std::nullopt;
}

std::vector<NamedOperator> hidden_generators(const std::string& algebra_id, int d, const Rational& n)
{
    std::vector<NamedOperator> out;
    auto var = [&](int i) { return TauPoly::variable(d, i); };
    auto cst = [&](const Rational& q) { return TauPoly::constant(d, ParamScalar(q)); };
    if (algebra_id == "gl") {
        if (d < 1 || d > kMaxRank)
            throw ArgumentError("gl generators need 1 <= d <= 8");
        PolyOperator euler(d);
        for (int j = 0; j < d; ++j)
            euler += PolyOperator::derivative(d, j, var(j));
        const PolyOperator j0 = euler - PolyOperator::multiplication(cst(n));
        for (int i = 0; i < d; ++i)
            out.push_back({"J-" + std::to_string(i + 1), PolyOperator::derivative(d, i)});
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.push_back({"J0_" + std::to_string(i + 1) + std::to_string(j + 1),
                               PolyOperator::derivative(d, j, var(i))});
        out.push_back({"J0", j0});
        for (int i = 0; i < d; ++i)
            out.push_back({"J+" + std::to_string(i + 1), compose(PolyOperator::multiplication(var(i)), j0)});
    } else if (algebra_id == "g2") {
        if (d != 2)
            throw ArgumentError("g2 generators act on two variables");
        const TauPoly t1 = var(0), t2 = var(1);
        const Rational third = n / 3;
        out.push_back({"L1", PolyOperator::derivative(2, 0)});
        out.push_back({"L2", PolyOperator::derivative(2, 0, t1) - PolyOperator::multiplication(cst(third))});
        out.push_back(
            {"L3", PolyOperator::derivative(2, 1, t2.scaled(Rational(2))) - PolyOperator::multiplication(cst(third))});
        out.push_back({"L4", PolyOperator::derivative(2, 0, t1 * t1) +
                                 PolyOperator::derivative(2, 1, (t1 * t2).scaled(Rational(2))) -
                                 PolyOperator::multiplication(t1.scaled(n))});
        out.push_back({"L5", PolyOperator::derivative(2, 1)});
        out.push_back({"L6", PolyOperator::derivative(2, 1, t1)});
        out.push_back({"L7", PolyOperator::derivative(2, 1, t1 * t1)});
        PolyOperator T(2);
        PolyOperator::Index k{};
        k[0] = 2;
        T.add_term(k, t2);
        out.push_back({"T", T});
    } else {
        throw ArgumentError("unknown algebra id '" + algebra_id + "' (expected gl or g2)");
    }
    return out;
}

InvarianceReport verify_invariant_subspace(const std::vector<NamedOperator>& generators, const FlagSpec& flag)
{
    InvarianceReport rep;
    const auto basis = flag.basis();
    for (const auto& g : generators) {
        if (g.op.nvars() != static_cast<int>(flag.alpha.size()))
            throw ArgumentError("generator arity does not match the flag");
        for (const auto& e : basis) {
            ++rep.checked;
            const TauPoly img = apply(g.op, TauPoly::monomial(g.op.nvars(), e));
            const int d = img.weighted_degree(flag.alpha);
            if (d > flag.n) {
                rep.pass = false;
                rep.witnesses.push_back(g.name + " maps " + monomial_string(e, g.op.nvars()) + " to degree " +
                                        std::to_string(d));
            }
        }
    }
    return rep;
}

namespace {

PolyOperator g2_products(const std::vector<NamedOperator>& gens)
{
    auto L = [&](int i) -> const PolyOperator& { return gens[i - 1].op; };
    const PolyOperator& T = gens[7].op;
    auto q = [](long p, long d) { return ParamScalar(make_rational(p, d)); };
    auto LL = [&](int i, int j) { return compose(L(i), L(j)); };
    PolyOperator h(2);
    h += LL(1, 1).scaled(4);
    h += LL(2, 1);
    h += T.scaled(q(1, 3));
    h += LL(2, 2).scaled(q(-1, 3));
    h += LL(1, 5).scaled(-12);
    h += LL(1, 3).scaled(-2);
    h += LL(2, 3).scaled(q(-1, 2));
    h += LL(6, 2).scaled(2);
    h += LL(5, 6).scaled(-9);
    h += LL(3, 5).scaled(q(-3, 2));
    h += LL(3, 6).scaled(q(-3, 2));
    h += LL(3, 3).scaled(q(-1, 4));
    h += LL(6, 7);
    return h;
}

} // namespace

PolyOperator g2_decomposition_products()
{
    return g2_products(hidden_generators("g2", 2, Rational(0)));
}

PolyOperator g2_decomposition()
{
    const auto gens = hidden_generators("g2", 2, Rational(0));
    auto L = [&](int i) -> const PolyOperator& { return gens[i - 1].op; };
    const ParamScalar nu = ParamScalar::symbol(Param::Nu);
    const ParamScalar mu = ParamScalar::symbol(Param::Mu);
    PolyOperator h = g2_products(gens);
    h += L(1).scaled(nu.scaled(Rational(2)));
    h += L(2).scaled(-(mu.scaled(Rational(3)) + nu.scaled(Rational(4))).scaled(make_rational(1, 3)));
    h += L(5).scaled(-(mu.scaled(Rational(2)) + nu).scaled(Rational(3)));
    h += L(3).scaled(-(ParamScalar(1) + mu.scaled(Rational(4)) + nu.scaled(Rational(4))).scaled(make_rational(1, 4)));
    h += L(7).scaled(nu.scaled(make_rational(-1, 12)));
    return h;
}

namespace {

std::string index_label(const PolyOperator::Index& k)
{
    std::string d;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < k[i]; ++j)
            d += "d" + std::to_string(i + 1);
    return d.empty() ? std::string("1") : d;
}

TauPoly::Exponent mono(int a, int b)
{
    TauPoly::Exponent e{};
    e[0] = static_cast<std::uint8_t>(a);
    e[1] = static_cast<std::uint8_t>(b);
    return e;
}

} // namespace

DecompositionReport verify_g2_decomposition(const AlgebraicOperator& target)
{
    if (target.nvars != 2)
        throw ArgumentError("g2 decomposition needs a two-variable operator");
    DecompositionReport rep;
    rep.combination = g2_decomposition();
    const PolyOperator want = PolyOperator::from_algebraic(target);
    std::map<PolyOperator::Index, bool> keys;
    for (const auto& [k, c] : rep.combination.terms())
        keys[k] = true;
    for (const auto& [k, c] : want.terms())
        keys[k] = true;
    for (const auto& [k, unused] : keys) {
        const TauPoly a = rep.combination.coefficient(k), b = want.coefficient(k);
        if (a != b)
            rep.differences.push_back(index_label(k) + ": combination " + a.to_string() + ", operator " +
                                      b.to_string());
    }
    rep.pass = rep.differences.empty();

    // Residual after the products: it must be first order and of the form
    // c1 L1 + c2 L2 + c3 L3 + c4 L4 + c5 L5 + c6 L6 + c7 L7 at n = 0, i.e.
    // d1: c1 + c2 t1 + c4 t1^2,  d2: c5 + c6 t1 + c7 t1^2 + 2 c3 t2 + 2 c4 t1 t2.
    const PolyOperator residual = want - g2_decomposition_products();
    rep.second_order_match = residual.order() <= 1;
    if (rep.second_order_match && residual.coefficient(PolyOperator::Index{}).is_zero()) {
        PolyOperator::Index k1{}, k2{};
        k1[0] = 1;
        k2[1] = 1;
        TauPoly r1 = residual.coefficient(k1), r2 = residual.coefficient(k2);
        const ParamScalar c1 = r1.coefficient(mono(0, 0)), c2 = r1.coefficient(mono(1, 0)),
                          c4 = r1.coefficient(mono(2, 0));
        const ParamScalar c5 = r2.coefficient(mono(0, 0)), c6 = r2.coefficient(mono(1, 0)),
                          c7 = r2.coefficient(mono(2, 0));
        const ParamScalar c3 = r2.coefficient(mono(0, 1)).scaled(make_rational(1, 2));
        r1.add_term(mono(0, 0), -c1);
        r1.add_term(mono(1, 0), -c2);
        r1.add_term(mono(2, 0), -c4);
        r2.add_term(mono(0, 0), -c5);
        r2.add_term(mono(1, 0), -c6);
        r2.add_term(mono(2, 0), -c7);
        r2.add_term(mono(0, 1), -c3.scaled(Rational(2)));
        r2.add_term(mono(1, 1), -c4.scaled(Rational(2)));
        rep.refit_exists = r1.is_zero() && r2.is_zero();
        if (rep.refit_exists) {
            rep.refit = {{"L1", c1}, {"L2", c2}, {"L3", c3}, {"L4", c4}, {"L5", c5}, {"L6", c6}, {"L7", c7}};
            std::ostringstream os;
            bool first = true;
            for (const auto& [name, c] : rep.refit) {
                if (c.is_zero())
                    continue;
                os << (first ? "" : " + ") << "(" << c.to_string() << ")*" << name;
                first = false;
            }
            rep.refit_text = first ? "0" : os.str();
        }
    }

    // L4 is the only generator that leaves the (1,2) flag; the combination
    // must preserve it, which it can only do without L4.
    const auto gens = hidden_generators("g2", 2, Rational(0));
    bool others_preserve = true;
    bool l4_breaks = false;
    for (const auto& g : gens) {
        const bool ok = check_flag_serial(g.op, {1, 2}, 6).pass;
        if (g.name == "L4")
            l4_breaks = !ok;
        else
            others_preserve = others_preserve && ok;
    }
    const bool refit_without_l4 = !rep.refit_exists || rep.refit[3].second.is_zero();
    rep.l4_absent = l4_breaks && others_preserve && refit_without_l4 &&
                    check_flag_serial(rep.combination, {1, 2}, 10).pass;
    return rep;
}

} // namespace triginv
