#include "triginv/rootdata.hpp"

#include "triginv/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace triginv {

// ---------------------------------------------------------------- CoordVector

CoordVector CoordVector::unit(std::size_t n, std::size_t i)
{
    CoordVector v = zero(n);
    v[i] = 1;
    return v;
}

bool CoordVector::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

CoordVector& CoordVector::operator+=(const CoordVector& o)
{
    if (o.size() != size())
        throw ArgumentError("coordinate vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i)
        entries_[i] += o.entries_[i];
    return *this;
}

CoordVector& CoordVector::operator-=(const CoordVector& o)
{
    if (o.size() != size())
        throw ArgumentError("coordinate vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i)
        entries_[i] -= o.entries_[i];
    return *this;
}

CoordVector CoordVector::operator-() const
{
    CoordVector r = *this;
    for (auto& q : r.entries_)
        q = -q;
    return r;
}

CoordVector CoordVector::scaled(const Rational& q) const
{
    CoordVector r = *this;
    for (auto& x : r.entries_)
        x *= q;
    return r;
}

bool CoordVector::operator<(const CoordVector& o) const
{
    return std::lexicographical_compare(entries_.begin(), entries_.end(), o.entries_.begin(), o.entries_.end());
}

std::string CoordVector::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < size(); ++i)
        os << (i ? ", " : "") << entries_[i].get_str();
    os << ")";
    return os.str();
}

std::size_t CoordVectorHash::operator()(const CoordVector& v) const
{
    std::size_t h = v.size();
    for (const auto& q : v.entries())
        h = h * 1000003u ^ hash_rational(q);
    return h;
}

// -------------------------------------------------------------------- ModelId

std::string ModelId::name() const
{
    switch (family) {
    case ModelFamily::A: return "A" + std::to_string(rank);
    case ModelFamily::B: return "B" + std::to_string(rank);
    case ModelFamily::C: return "C" + std::to_string(rank);
    case ModelFamily::D: return "D" + std::to_string(rank);
    case ModelFamily::BC: return "BC" + std::to_string(rank);
    case ModelFamily::G2: return "G2";
    case ModelFamily::F4: return "F4";
    case ModelFamily::E6: return "E6";
    }
    return "?";
}

ModelId ModelId::parse(std::string_view text)
{
    std::string s(text);
    for (auto& c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
    if (s == "G2")
        return {ModelFamily::G2, 2};
    if (s == "F4")
        return {ModelFamily::F4, 4};
    if (s == "E6")
        return {ModelFamily::E6, 6};

    ModelFamily fam;
    std::string digits;
    if (s.rfind("BC", 0) == 0) {
        fam = ModelFamily::BC;
        digits = s.substr(2);
    } else if (!s.empty() && (s[0] == 'A' || s[0] == 'B' || s[0] == 'C' || s[0] == 'D')) {
        fam = s[0] == 'A' ? ModelFamily::A : s[0] == 'B' ? ModelFamily::B : s[0] == 'C' ? ModelFamily::C : ModelFamily::D;
        digits = s.substr(1);
    } else {
        throw ConfigurationError("unsupported model: " + std::string(text));
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
        throw ConfigurationError("unsupported model: " + std::string(text));
    const int rank = std::stoi(digits);
    const int min_rank = fam == ModelFamily::A ? 1 : fam == ModelFamily::D ? 3 : 2;
    if (rank < min_rank || rank > kMaxRank)
        throw ConfigurationError("rank out of range for model " + std::string(text));
    return {fam, rank};
}

// ----------------------------------------------------------------- ModelChart

std::vector<Param> ModelChart::active_symbols() const
{
    std::vector<Param> out;
    for (const auto& [cls, p] : coupling_)
        if (std::find(pinned_.begin(), pinned_.end(), p) == pinned_.end() &&
            std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

Rational ModelChart::dot(const CoordVector& a, const CoordVector& b) const
{
    if (a.size() != static_cast<std::size_t>(ambient_dim_) || b.size() != static_cast<std::size_t>(ambient_dim_))
        throw ArgumentError("vector dimension does not match chart " + name());
    Rational s = 0;
    for (int i = 0; i < ambient_dim_; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; j < ambient_dim_; ++j)
            if (form_(i, j) != 0 && b[j] != 0)
                s += a[i] * form_(i, j) * b[j];
    }
    return s;
}

Weight ModelChart::to_weight(const CoordVector& v) const
{
    if (v.size() != static_cast<std::size_t>(ambient_dim_))
        throw ArgumentError("vector dimension does not match chart " + name());
    Weight w;
    for (int i = 0; i < rank_; ++i) {
        Rational p = 2 * dot(v, simple_roots_[i]) / simple_norm2_[i];
        if (p.get_den() != 1)
            throw ArgumentError("not a lattice weight of " + name() + ": " + v.to_string());
        w[i] = static_cast<std::int32_t>(p.get_num().get_si());
    }
    if (to_coord(w) != v)
        throw ArgumentError("vector outside the weight space of " + name() + ": " + v.to_string());
    return w;
}

CoordVector ModelChart::to_coord(const Weight& w) const
{
    CoordVector v = CoordVector::zero(ambient_dim_);
    for (int j = 0; j < rank_; ++j)
        if (w[j] != 0)
            v += seeds_[j].scaled(Rational(w[j]));
    return v;
}

std::int64_t ModelChart::pair_scaled(const Weight& a, const Weight& b) const
{
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0)
            continue;
        std::int64_t row = 0;
        for (int j = 0; j < rank_; ++j)
            row += gram_num_[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

Rational ModelChart::pair(const Weight& a, const Weight& b) const
{
    Rational q(pair_scaled(a, b), gram_den_);
    q.canonicalize();
    return q;
}

Weight ModelChart::fundamental_weight(std::size_t i) const
{
    Weight w;
    w[i] = 1;
    return w;
}

Weight ModelChart::simple_reflect(std::size_t i, const Weight& w) const
{
    const std::int32_t k = w[i];
    if (k == 0)
        return w;
    Weight r = w;
    const Weight& a = simple_weights_[i];
    for (int j = 0; j < rank_; ++j)
        r[j] -= k * a[j];
    return r;
}

int ModelChart::coroot_pairing(std::size_t root_index, const Weight& w) const
{
    const Weight& c = positive_roots_[root_index].coroot;
    int s = 0;
    for (int i = 0; i < rank_; ++i)
        s += w[i] * c[i];
    return s;
}

Weight ModelChart::reflect_by_root(std::size_t root_index, const Weight& w) const
{
    const int k = coroot_pairing(root_index, w);
    if (k == 0)
        return w;
    Weight r = w;
    const Weight& a = positive_roots_[root_index].weight;
    for (int j = 0; j < rank_; ++j)
        r[j] -= k * a[j];
    return r;
}

bool ModelChart::is_dominant(const Weight& w) const
{
    for (int i = 0; i < rank_; ++i)
        if (w[i] < 0)
            return false;
    return true;
}

std::vector<std::int64_t> ModelChart::ambient_key(const Weight& w) const
{
    std::vector<std::int64_t> key(ambient_dim_, 0);
    for (int j = 0; j < rank_; ++j)
        if (w[j] != 0)
            for (int k = 0; k < ambient_dim_; ++k)
                key[k] += w[j] * seed_int_[j][k];
    return key;
}

bool ModelChart::ambient_less(const Weight& a, const Weight& b) const
{
    for (int k = 0; k < ambient_dim_; ++k) {
        std::int64_t x = 0, y = 0;
        for (int j = 0; j < rank_; ++j) {
            x += a[j] * seed_int_[j][k];
            y += b[j] * seed_int_[j][k];
        }
        if (x != y)
            return x < y;
    }
    return false;
}

std::vector<std::int64_t> ModelChart::root_coordinates_scaled(const Weight& w) const
{
    std::vector<std::int64_t> c(rank_, 0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            c[i] += cartan_inv_int_[j][i] * w[j];
    return c;
}

bool ModelChart::dominance_order_less(const Weight& a, const Weight& b) const
{
    const auto ca = root_coordinates_scaled(a);
    const auto cb = root_coordinates_scaled(b);
    const auto ha = std::accumulate(ca.begin(), ca.end(), std::int64_t{0});
    const auto hb = std::accumulate(cb.begin(), cb.end(), std::int64_t{0});
    if (ha != hb)
        return ha < hb;
    return ca < cb;
}

const std::vector<Weight>& ModelChart::fundamental_orbit(std::size_t a) const
{
    if (a >= static_cast<std::size_t>(rank_))
        throw ArgumentError("fundamental seed index out of range");
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = orbit_cache_.find(a);
        if (it != orbit_cache_.end())
            return *it->second;
    }
    auto orbit = std::make_shared<const std::vector<Weight>>(weyl_orbit_weights(*this, fundamental_weight(a)));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, inserted] = orbit_cache_.emplace(a, std::move(orbit));
    return *it->second;
}

void ModelChart::install_fundamental_orbit(std::size_t a, std::vector<Weight> orbit) const
{
    std::lock_guard<std::mutex> lock(cache_mutex_);
    orbit_cache_.emplace(a, std::make_shared<const std::vector<Weight>>(std::move(orbit)));
}

std::int64_t ModelChart::orbit_size_dominant(const Weight& dominant) const
{
    std::uint32_t mask = 0;
    for (int i = 0; i < rank_; ++i) {
        if (dominant[i] < 0)
            throw ArgumentError("orbit_size_dominant needs a dominant weight");
        if (dominant[i] == 0)
            mask |= 1u << i;
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = stabilizer_cache_.find(mask);
        if (it != stabilizer_cache_.end())
            return it->second;
    }
    // the orbit size depends only on which simple reflections fix the weight
    Weight probe;
    for (int i = 0; i < rank_; ++i)
        probe[i] = (mask >> i & 1u) ? 0 : 1;
    const auto size = static_cast<std::int64_t>(weyl_orbit_weights(*this, probe).size());
    std::lock_guard<std::mutex> lock(cache_mutex_);
    stabilizer_cache_.emplace(mask, size);
    return size;
}

namespace {

std::int64_t lcm_den(const std::vector<Rational>& qs)
{
    Integer l = 1;
    for (const auto& q : qs)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    if (!l.fits_slong_p())
        throw InternalError("denominator overflow");
    return l.get_si();
}

std::int64_t to_int64(const Rational& q)
{
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw InternalError("expected a machine integer, got " + q.get_str());
    return q.get_num().get_si();
}

} // namespace

void ModelChart::finalize()
{
    // simple roots: indecomposable positive roots of the reduced subsystem
    std::vector<CoordVector> reduced;
    for (const auto& r : positive_roots_) {
        bool has_double = false;
        for (const auto& s : positive_roots_)
            if (s.vector == r.vector.scaled(2))
                has_double = true;
        if (!has_double)
            reduced.push_back(r.vector);
    }
    std::vector<CoordVector> simple;
    for (const auto& r : reduced) {
        bool decomposable = false;
        for (std::size_t i = 0; i < reduced.size() && !decomposable; ++i)
            for (std::size_t j = i; j < reduced.size() && !decomposable; ++j)
                if (reduced[i] + reduced[j] == r)
                    decomposable = true;
        if (!decomposable)
            simple.push_back(r);
    }
    if (simple.size() != static_cast<std::size_t>(rank_))
        throw InternalError("chart " + name() + ": expected " + std::to_string(rank_) + " simple roots, found " +
                            std::to_string(simple.size()));

    // order simple roots so that seed a pairs to delta_{ai} with coroot i
    simple_roots_.assign(rank_, CoordVector());
    std::vector<bool> used(rank_, false);
    for (int a = 0; a < rank_; ++a) {
        int match = -1;
        for (int i = 0; i < rank_; ++i) {
            const Rational p = 2 * dot(seeds_[a], simple[i]) / dot(simple[i], simple[i]);
            if (p == 0)
                continue;
            if (p != 1 || match != -1)
                throw InternalError("chart " + name() + ": seed " + std::to_string(a + 1) +
                                    " is not a fundamental weight of the chamber");
            match = i;
        }
        if (match < 0 || used[match])
            throw InternalError("chart " + name() + ": seed/simple-root matching failed");
        used[match] = true;
        simple_roots_[a] = simple[match];
    }

    simple_norm2_.resize(rank_);
    for (int i = 0; i < rank_; ++i)
        simple_norm2_[i] = dot(simple_roots_[i], simple_roots_[i]);

    cartan_.assign(rank_, std::vector<int>(rank_));
    simple_weights_.assign(rank_, Weight{});
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            const Rational c = 2 * dot(simple_roots_[i], simple_roots_[j]) / simple_norm2_[j];
            if (c.get_den() != 1)
                throw InternalError("chart " + name() + ": non-integral Cartan entry");
            cartan_[i][j] = static_cast<int>(c.get_num().get_si());
            simple_weights_[i][j] = cartan_[i][j];
        }

    std::vector<Rational> gram_entries;
    std::vector<std::vector<Rational>> gram(rank_, std::vector<Rational>(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            gram[i][j] = dot(seeds_[i], seeds_[j]);
            gram_entries.push_back(gram[i][j]);
        }
    gram_den_ = lcm_den(gram_entries);
    gram_num_.assign(rank_, std::vector<std::int64_t>(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            gram_num_[i][j] = to_int64(gram[i][j] * gram_den_);

    std::vector<Rational> seed_entries;
    for (const auto& s : seeds_)
        for (const auto& q : s.entries())
            seed_entries.push_back(q);
    ambient_den_ = lcm_den(seed_entries);
    seed_int_.assign(rank_, std::vector<std::int64_t>(ambient_dim_));
    for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < ambient_dim_; ++k)
            seed_int_[j][k] = to_int64(seeds_[j][k] * ambient_den_);

    RationalMatrix cm(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            cm(i, j) = cartan_[i][j];
    const RationalMatrix cinv = cm.inverse();
    std::vector<Rational> cinv_entries;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            cinv_entries.push_back(cinv(i, j));
    height_den_ = lcm_den(cinv_entries);
    cartan_inv_int_.assign(rank_, std::vector<std::int64_t>(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            cartan_inv_int_[i][j] = to_int64(cinv(i, j) * height_den_);

    for (auto& r : positive_roots_) {
        r.norm2 = dot(r.vector, r.vector);
        r.weight = to_weight(r.vector);
        for (int i = 0; i < rank_; ++i) {
            const Rational c = 2 * dot(seeds_[i], r.vector) / r.norm2;
            if (c.get_den() != 1)
                throw InternalError("chart " + name() + ": non-integral coroot pairing");
            r.coroot[i] = static_cast<std::int32_t>(c.get_num().get_si());
        }
    }
}

// ------------------------------------------------------------ chart builders

namespace {

using Roots = std::vector<std::pair<CoordVector, std::string>>;

CoordVector ev(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> entries)
{
    CoordVector v = CoordVector::zero(n);
    for (auto [i, c] : entries)
        v[i] += c;
    return v;
}

void add_pm(Roots& roots, const CoordVector& v, const std::string& cls)
{
    roots.emplace_back(v, cls);
    roots.emplace_back(-v, cls);
}

struct RawChart {
    int ambient = 0;
    RationalMatrix form;
    Roots roots;
    std::vector<CoordVector> seeds;
    std::map<std::string, Param> coupling;
    std::vector<Param> pinned;
    Rational scale;
    std::vector<int> char_vector;
    std::size_t expected_positive = 0;
};

RawChart raw_a(int n)
{
    RawChart c;
    c.ambient = n + 1;
    c.form = RationalMatrix::identity(n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            add_pm(c.roots, ev(n + 1, {{i, 1}, {j, -1}}), "root");
    for (int k = 1; k <= n; ++k) {
        CoordVector w = CoordVector::zero(n + 1);
        for (int j = 0; j <= n; ++j)
            w[j] = (j < k ? Rational(1) : Rational(0)) - make_rational(k, n + 1);
        for (auto& q : const_cast<std::vector<Rational>&>(w.entries()))
            q.canonicalize();
        c.seeds.push_back(w);
    }
    c.coupling = {{"root", Param::Nu}};
    // the sign makes the spectrum n^2/2 + nu n nonnegative, matching the tabulated coefficients
    c.scale = 2;
    c.char_vector.assign(n, 1);
    c.expected_positive = static_cast<std::size_t>(n * (n + 1) / 2);
    return c;
}

RawChart raw_bc(int n, ModelFamily fam)
{
    RawChart c;
    c.ambient = n;
    c.form = RationalMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            add_pm(c.roots, ev(n, {{i, 1}, {j, -1}}), "long");
            add_pm(c.roots, ev(n, {{i, 1}, {j, 1}}), "long");
        }
        add_pm(c.roots, ev(n, {{i, 1}}), "short");
        add_pm(c.roots, ev(n, {{i, 2}}), "doubled");
    }
    for (int k = 1; k <= n; ++k) {
        CoordVector w = CoordVector::zero(n);
        for (int j = 0; j < k; ++j)
            w[j] = 1;
        c.seeds.push_back(w);
    }
    c.coupling = {{"long", Param::Nu}, {"doubled", Param::Nu2}, {"short", Param::Nu3}};
    if (fam == ModelFamily::B)
        c.pinned = {Param::Nu2};
    else if (fam == ModelFamily::C)
        c.pinned = {Param::Nu3};
    else if (fam == ModelFamily::D)
        c.pinned = {Param::Nu2, Param::Nu3};
    c.scale = -2;
    c.char_vector.assign(n, 1);
    c.expected_positive = static_cast<std::size_t>(n * n + n);
    return c;
}

RawChart raw_g2()
{
    RawChart c;
    c.ambient = 3;
    c.form = RationalMatrix::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            add_pm(c.roots, ev(3, {{i, 1}, {j, -1}}), "short");
    for (int m = 0; m < 3; ++m) {
        CoordVector v = CoordVector::zero(3);
        for (int k = 0; k < 3; ++k)
            v[k] = k == m ? -2 : 1;
        add_pm(c.roots, v, "long");
    }
    c.seeds = {ev(3, {{2, 1}, {0, -1}}), ev(3, {{0, -1}, {1, -1}, {2, 2}})};
    c.coupling = {{"short", Param::Nu}, {"long", Param::Mu}};
    c.scale = Rational(-1, 3);
    c.char_vector = {1, 2};
    c.expected_positive = 6;
    return c;
}

RawChart raw_f4()
{
    // dual root space: e_i +- e_j (norm 2), 2 e_i and (+-1,+-1,+-1,+-1) (norm 4)
    RawChart c;
    c.ambient = 4;
    c.form = RationalMatrix::identity(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            add_pm(c.roots, ev(4, {{i, 1}, {j, -1}}), "short");
            add_pm(c.roots, ev(4, {{i, 1}, {j, 1}}), "short");
        }
        add_pm(c.roots, ev(4, {{i, 2}}), "long");
    }
    for (int s = 0; s < 8; ++s) {
        CoordVector v = CoordVector::zero(4);
        v[0] = 1;
        for (int k = 1; k < 4; ++k)
            v[k] = (s >> (k - 1) & 1) ? -1 : 1;
        add_pm(c.roots, v, "long");
    }
    c.seeds = {ev(4, {{2, 1}, {3, 1}}), ev(4, {{3, 2}}), ev(4, {{1, 1}, {2, 1}, {3, 2}}),
               ev(4, {{0, 1}, {1, 1}, {2, 1}, {3, 3}})};
    c.coupling = {{"short", Param::Nu}, {"long", Param::Mu}};
    c.scale = -2;
    c.char_vector = {1, 2, 2, 3};
    c.expected_positive = 24;
    return c;
}

RawChart raw_e6()
{
    // coordinates y1..y5 and y6 = x6 + x7 - x8 after imposing x7 = x6, x8 = -x6;
    // the kinetic operator is Laplacian_5 + 3 d^2/dy6^2
    RawChart c;
    c.ambient = 6;
    c.form = RationalMatrix::diagonal({1, 1, 1, 1, 1, 3});
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            add_pm(c.roots, ev(6, {{i, 1}, {j, -1}}), "root");
            add_pm(c.roots, ev(6, {{i, 1}, {j, 1}}), "root");
        }
    const Rational half(1, 2);
    for (int s = 0; s < 32; ++s) {
        if (__builtin_popcount(static_cast<unsigned>(s)) % 2 != 0)
            continue;
        CoordVector v = CoordVector::zero(6);
        for (int k = 0; k < 5; ++k)
            v[k] = (s >> k & 1) ? -half : half;
        v[5] = -half;
        add_pm(c.roots, v, "root");
    }
    auto w = [](std::initializer_list<Rational> e) { return CoordVector(std::vector<Rational>(e)); };
    const Rational z(0), one(1);
    c.seeds = {
        w({z, z, z, z, z, Rational(-2, 3)}),
        w({z, z, z, z, one, Rational(-1, 3)}),
        w({z, z, z, one, one, Rational(-2, 3)}),
        w({-half, half, half, half, half, Rational(-5, 6)}),
        w({half, half, half, half, half, -half}),
        w({z, z, one, one, one, Rational(-1)}),
    };
    c.coupling = {{"root", Param::Nu}};
    c.scale = -2;
    c.char_vector = {1, 1, 2, 2, 2, 3};
    c.expected_positive = 36;
    return c;
}

std::mutex g_chart_mutex;
std::map<std::string, ChartPtr> g_charts;

} // namespace

ChartPtr build_chart(const ModelId& id)
{
    const std::string key = id.name();
    {
        std::lock_guard<std::mutex> lock(g_chart_mutex);
        auto it = g_charts.find(key);
        if (it != g_charts.end())
            return it->second;
    }

    RawChart raw;
    switch (id.family) {
    case ModelFamily::A: raw = raw_a(id.rank); break;
    case ModelFamily::B:
    case ModelFamily::C:
    case ModelFamily::D:
    case ModelFamily::BC: raw = raw_bc(id.rank, id.family); break;
    case ModelFamily::G2: raw = raw_g2(); break;
    case ModelFamily::F4: raw = raw_f4(); break;
    case ModelFamily::E6: raw = raw_e6(); break;
    }

    auto chart = std::shared_ptr<ModelChart>(new ModelChart());
    chart->id_ = id;
    chart->rank_ = static_cast<int>(raw.seeds.size());
    chart->ambient_dim_ = raw.ambient;
    chart->form_ = raw.form;
    chart->seeds_ = raw.seeds;
    chart->coupling_ = raw.coupling;
    chart->pinned_ = raw.pinned;
    chart->scale_ = raw.scale;
    chart->char_vector_ = raw.char_vector;

    CoordVector regular = CoordVector::zero(raw.ambient);
    for (const auto& s : raw.seeds)
        regular += s;
    for (const auto& [v, cls] : raw.roots) {
        const Rational p = chart->dot(v, regular);
        if (p == 0)
            throw InternalError("chart " + key + ": seed sum is not regular");
        if (p > 0)
            chart->positive_roots_.push_back(RootEntry{v, cls, {}, {}, {}});
    }
    std::sort(chart->positive_roots_.begin(), chart->positive_roots_.end(),
              [](const RootEntry& a, const RootEntry& b) { return a.vector < b.vector; });
    if (chart->positive_roots_.size() != raw.expected_positive)
        throw InternalError("chart " + key + ": unexpected number of positive roots");
    chart->finalize();

    std::lock_guard<std::mutex> lock(g_chart_mutex);
    auto [it, inserted] = g_charts.emplace(key, chart);
    return it->second;
}

} // namespace triginv
