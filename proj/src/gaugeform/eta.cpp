#include "triginv/gaugeform.hpp"

#include "triginv/errors.hpp"

#include <map>

namespace triginv {

namespace {

// Laurent polynomial in z_j = e^{i x_j} over the ambient coordinates. The
// eta variables are written in these coordinates and need not lie
// in the weight lattice term by term.
class Laurent {
public:
    using Key = std::vector<int>;

    explicit Laurent(int dim) : dim_(dim) {}

    static Laurent constant(int dim, const Gauss& c)
    {
        Laurent l(dim);
        l.add(Key(dim, 0), c);
        return l;
    }
    static Laurent monomial(int dim, Key k, const Gauss& c)
    {
        Laurent l(dim);
        l.add(std::move(k), c);
        return l;
    }

    void add(const Key& k, const Gauss& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o)
    {
        for (const auto& [k, c] : o.terms_)
            add(k, c);
        return *this;
    }
    Laurent scaled(const Gauss& s) const
    {
        Laurent out(dim_);
        for (const auto& [k, c] : terms_)
            out.add(k, c * s);
        return out;
    }
    Laurent operator*(const Laurent& o) const
    {
        Laurent out(dim_);
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_) {
                Key k(dim_);
                for (int i = 0; i < dim_; ++i)
                    k[i] = k1[i] + k2[i];
                out.add(k, c1 * c2);
            }
        return out;
    }

    const std::map<Key, Gauss>& terms() const { return terms_; }

private:
    int dim_;
    std::map<Key, Gauss> terms_;
};

Laurent operator+(Laurent a, const Laurent& b) { return a += b; }

Laurent lin(int dim, std::initializer_list<std::pair<Laurent::Key, Gauss>> parts)
{
    Laurent l(dim);
    for (const auto& [k, c] : parts)
        l.add(k, c);
    return l;
}

Laurent::Key unit(int dim, int j, int s = 1)
{
    Laurent::Key k(dim, 0);
    k[j] = s;
    return k;
}

// sigma_0..sigma_n of the given factors
std::vector<Laurent> elementary(int dim, const std::vector<Laurent>& xs)
{
    std::vector<Laurent> sig(xs.size() + 1, Laurent(dim));
    sig[0] = Laurent::constant(dim, Gauss(Rational(1)));
    for (std::size_t j = 0; j < xs.size(); ++j)
        for (std::size_t k = j + 1; k >= 1; --k)
            sig[k] += sig[k - 1] * xs[j];
    return sig;
}

ExpSum to_expsum(const ChartPtr& chart, const Laurent& l, bool project_zero_sum)
{
    const int m = chart->ambient_dim();
    ExpSum out(chart);
    for (const auto& [k, c] : l.terms()) {
        CoordVector v = CoordVector::zero(m);
        Rational mean = 0;
        for (int i = 0; i < m; ++i) {
            v[i] = k[i];
            mean += k[i];
        }
        if (project_zero_sum) {
            mean /= m;
            for (int i = 0; i < m; ++i)
                v[i] -= mean;
        }
        out.add(chart->to_weight(v), ParamScalar(c));
    }
    return out;
}

IdentityCheck compare(const ChartPtr& chart, const std::string& name, const ExpSum& lhs, const TauPoly& rhs,
                      const std::string& lhs_text)
{
    IdentityCheck check;
    check.name = name;
    check.lhs = lhs_text;
    check.rhs = rhs.to_string();
    const ExpSum diff = lhs - expand_tau(chart, rhs);
    check.pass = diff.is_zero();
    if (!check.pass) {
        try {
            check.difference = to_tau(diff).to_string();
        } catch (const NotInvariantError&) {
            check.difference = "non-invariant difference with " + std::to_string(diff.size()) + " terms";
        }
    }
    return check;
}

const Gauss kOne(Rational(1));
const Gauss kHalf(Rational(1, 2));

} // namespace

std::vector<IdentityCheck> eta_tau_relations(const ChartPtr& chart)
{
    const ModelId id = chart->id();
    const int m = chart->ambient_dim();
    const int r = chart->rank();
    std::vector<IdentityCheck> out;
    auto tau = [&](const char* text) { return parse_tau_poly(text, r); };

    switch (id.family) {
    case ModelFamily::A: {
        std::vector<Laurent> z;
        for (int j = 0; j < m; ++j)
            z.push_back(Laurent::monomial(m, unit(m, j), kOne));
        const auto sig = elementary(m, z);
        for (int k = 1; k <= r; ++k) {
            const std::string name = "eta" + std::to_string(k) + " = tau" + std::to_string(k);
            out.push_back(compare(chart, name, to_expsum(chart, sig[k], true), TauPoly::variable(r, k - 1),
                                  "sigma_" + std::to_string(k) + "(e^{iy})"));
        }
        break;
    }
    case ModelFamily::B:
    case ModelFamily::C:
    case ModelFamily::D:
    case ModelFamily::BC: {
        std::vector<Laurent> cosines;
        for (int j = 0; j < m; ++j)
            cosines.push_back(lin(m, {{unit(m, j), kHalf}, {unit(m, j, -1), kHalf}}));
        const auto sig = elementary(m, cosines);
        for (int k = 1; k <= r; ++k) {
            const std::string name = "eta" + std::to_string(k) + " = 2^-" + std::to_string(k) + " tau" +
                                     std::to_string(k);
            out.push_back(compare(chart, name, to_expsum(chart, sig[k], false),
                                  TauPoly::variable(r, k - 1).scaled(Rational(1, 1 << k)),
                                  "sigma_" + std::to_string(k) + "(cos x)"));
        }
        break;
    }
    case ModelFamily::G2: {
        // eta1 = -2 sum sin^2((y_i - y_j)/2) = sum (cos(y_i - y_j) - 1)
        Laurent eta1(m);
        // s = sin(y1-y2) + sin(y2-y3) + sin(y3-y1), sin x = -(i/2)(e^{ix} - e^{-ix})
        Laurent s(m);
        const Gauss mi2(Rational(0), Rational(-1, 2));
        const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
        for (const auto& p : pairs) {
            Laurent::Key d(m, 0);
            d[p[0]] = 1;
            d[p[1]] = -1;
            Laurent::Key e(m, 0);
            e[p[0]] = -1;
            e[p[1]] = 1;
            eta1 += lin(m, {{d, kHalf}, {e, kHalf}, {Laurent::Key(m, 0), Gauss(Rational(-1))}});
            s += lin(m, {{d, mi2}, {e, -mi2}});
        }
        const Laurent eta2 = (s * s).scaled(Gauss(Rational(4)));
        out.push_back(compare(chart, "eta1 = (tau1 - 6)/2", to_expsum(chart, eta1, true), tau("(t1 - 6)/2"),
                              "-2 sum sin^2((y_i - y_j)/2)"));
        out.push_back(compare(chart, "eta2 = 4 tau2 - tau1^2 + 12", to_expsum(chart, eta2, true),
                              tau("4 t2 - t1^2 + 12"), "4 [sum sin(y_i - y_j)]^2"));
        break;
    }
    case ModelFamily::F4: {
        // tilde eta_i = sigma_i(4 sin^2(x_j/2)) = sigma_i(2 - z_j - 1/z_j)
        std::vector<Laurent> xs;
        for (int j = 0; j < m; ++j)
            xs.push_back(lin(m, {{Laurent::Key(m, 0), Gauss(Rational(2))},
                                 {unit(m, j), Gauss(Rational(-1))},
                                 {unit(m, j, -1), Gauss(Rational(-1))}}));
        const auto e = elementary(m, xs);
        auto q = [](long p, long d) { return Gauss(make_rational(p, d)); };
        const Laurent eta2 = e[1] + e[2].scaled(q(-1, 6));
        const Laurent eta6 = e[3] + (e[1] * e[2]).scaled(q(-1, 6)) + e[4].scaled(q(-1, 2)) +
                             (e[2] * e[2]).scaled(q(1, 72));
        const Laurent eta8 = e[4] + (e[1] * e[3]).scaled(q(-1, 4)) + (e[2] * e[2]).scaled(q(1, 12));
        const Laurent eta12 = e[4] * e[2] + (e[2] * e[2] * e[2]).scaled(q(-1, 36)) +
                              (e[3] * e[3]).scaled(q(-3, 8)) + (e[1] * e[2] * e[3]).scaled(q(1, 8)) +
                              (e[1] * e[1] * e[4]).scaled(q(-3, 8));
        // The printed relations carry beta^-d; at the normalization that reproduces
        // the printed tau-operator (prefactor 1/(4 beta^2) with scale -2) this reads
        // (beta/2)^-d, so each printed right-hand side is multiplied by 2^d.
        struct Rel {
            const char* name;
            const Laurent* lhs;
            const char* rhs;
            int d;
            const char* lhs_text;
        };
        const Rel rels[] = {
            {"eta2", &eta2, "-(t1 - 24)/24", 2, "te1 - te2/6"},
            {"eta6", &eta6, "(t1^2 + 24 t1 - 36 t2 - 288)/4608", 6, "te3 - te1 te2/6 - (te4 - te2^2/36)/2"},
            {"eta8", &eta8, "(t1^2 - 12 t1 - 3 t3)/3072", 8, "te4 - te1 te3/4 + te2^2/12"},
            {"eta12", &eta12,
             "-(2 t1^3 + 72 t1^2 - 9 t1 t3 - 864 t1 - 324 t2 - 216 t3 + 27 t4 - 1728)/294912", 12,
             "te4 te2 - te2^3/36 - 3 te3^2/8 + te1 te2 te3/8 - 3 te1^2 te4/8"},
        };
        for (const auto& rel : rels) {
            const ExpSum lhs = to_expsum(chart, *rel.lhs, false);
            const TauPoly printed = tau(rel.rhs);
            const std::string factor = "2^" + std::to_string(rel.d);
            IdentityCheck check = compare(chart, std::string(rel.name) + " = " + factor + " * printed", lhs,
                                          printed.scaled(Rational(mpz_class(1) << rel.d)), rel.lhs_text);
            const bool literal = (lhs - expand_tau(chart, printed)).is_zero();
            check.note = literal ? "printed prefactor holds literally"
                                 : "printed prefactor with beta = 1 is off by exactly " + factor +
                                       "; beta^-" + std::to_string(rel.d) + " read as (beta/2)^-" +
                                       std::to_string(rel.d);
            out.push_back(std::move(check));
        }
        break;
    }
    case ModelFamily::E6:
        throw ArgumentError("no printed eta relations for E6");
    }
    return out;
}

} // namespace triginv
