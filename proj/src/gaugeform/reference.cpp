#include "triginv/gaugeform.hpp"

#include "triginv/errors.hpp"

namespace triginv {

namespace {

struct Fixture {
    int nvars;
    std::vector<int> char_vector;
    // upper triangle, row major: A11, A12, ..., A1r, A22, ...
    std::vector<const char*> a;
    std::vector<const char*> b;
};

// The G2 mixed entry is the printed full coefficient of d1 d2 halved.
const Fixture kG2{
    2,
    {1, 2},
    {
        "4 + t1 + t2/3 - t1^2/3",
        "-(12 + 4 t2 + t1 t2 - 2 t1^2)/2",
        "-(9 t1 + 3 t2 + 3 t1 t2 + t2^2 - t1^3)",
    },
    {
        "2 nu - (1 + 3 mu + 4 nu) t1/3",
        "-(3 (2 mu + nu) + (1 + 2 mu + 2 nu) t2 + (nu/12) t1^2)",
    },
};

const Fixture kF4{
    4,
    {1, 2, 2, 3},
    {
        "-2 t1^2 + 24 t1 + 12 t2 + 2 t3 + 96",
        "-2 t1 t2 + 24 t1 + 6 t3",
        "24 t1^2 + 8 t1 t2 - 3 t1 t3 - 192 t1 - 84 t2 - 48 t3 + 3 t4 - 576",
        "8 t1 t2 - 4 t1 t4 + 4 t2 t3 - 96 t1 - 24 t3",
        "24 t1^2 - 4 t2^2 - 192 t1 - 96 t2 - 48 t3 + 4 t4 - 384",
        "-48 t1^2 - 8 t1 t2 + 6 t1 t3 - 4 t2 t3 + 480 t1 + 216 t2 + 120 t3 - 18 t4 + 1152",
        "-48 t1^3 - 8 t1^2 t2 + 192 t1^2 + 208 t1 t2 + 144 t1 t3 - 12 t1 t4 + 24 t2^2 + 16 t2 t3"
        " - 6 t2 t4 + 6 t3^2 + 3072 t1 + 960 t2 + 576 t3 - 96 t4 + 4608",
        "24 t1^3 + 8 t1^2 t2 - 192 t1^2 - 120 t1 t2 - 72 t1 t3 + 2 t1 t4 - 8 t2 t3 - 6 t3^2"
        " - 768 t1 - 96 t2 - 96 t3 + 24 t4",
        "4 t1 t2 t3 - 32 t1^2 t2 + 192 t1^2 + 288 t1 t2 - 24 t1 t3 - 16 t1 t4 + 144 t2^2"
        " + 64 t2 t3 - 12 t2 t4 - 8 t3 t4 - 1920 t1 - 96 t2 - 480 t3 + 72 t4 - 4608",
        "-32 t1^3 t2 - 384 t1^3 - 192 t1^2 t2 - 16 t1^2 t4 + 96 t1 t2^2 + 4 t2 t3^2"
        " + 96 t1 t2 t3 - 8 t1 t2 t4 + 2688 t1^2 + 1728 t2^2 + 48 t3^2 - 12 t4^2"
        " + 5760 t1 t2 + 1152 t1 t3 + 32 t1 t4 + 1024 t2 t3 - 48 t2 t4 + 32 t3 t4"
        " + 15360 t1 + 12288 t2 + 2304 t3 + 192 t4 + 18432",
    },
    {
        "-2 (1 + 6 mu + 5 nu) t1 - 48 nu",
        "-12 nu t1 - 4 (1 + 5 mu + 3 nu) t2 - 96 mu",
        "-48 (mu + nu) t1 - 24 nu t2 - 6 (1 + 4 mu + 3 nu) t3",
        "-48 mu t1^2 - 8 nu t1 t2 + 48 (8 mu + nu) t1 + 48 (4 mu - nu) t2 + 96 mu t3"
        " - 12 (1 + 3 mu + 2 nu) t4 + 1152 mu",
    },
};

const Fixture kE6{
    6,
    {1, 1, 2, 2, 2, 3},
    {
        // row 1
        "-4 t1^2/3 + 20 t2 + 2 t4",
        "-2 t1 t2/3 + 6 t5 + 54",
        "-4 t1 t3/3 + 5 t2 t5 - 32 t2 - 5 t4",
        "16 t1 t2 - 5 t1 t4/3 - 51 t5 + 3 t6 - 432",
        "-t1 t5 + 32 t1 + 5 t3",
        "10 t1 t5 - 2 t1 t6 - 64 t2^2 - 4 t2 t4 + 4 t3 t5 + 384 t1 + 78 t3",
        // row 2
        "-4 t2^2/3 + 20 t1 + 2 t3",
        "16 t1 t2 - 5 t2 t3/3 - 51 t5 + 3 t6 - 432",
        "-4 t2 t4/3 + 5 t1 t5 - 32 t1 - 5 t3",
        "-t2 t5 + 32 t2 + 5 t4",
        "-64 t1^2 - 4 t1 t3 + 10 t2 t5 - 2 t2 t6 + 4 t4 t5 + 384 t2 + 78 t4",
        // row 3
        "16 t1 t2^2 - 64 t1^2 - 24 t1 t3 - 36 t2 t5 + 2 t2 t6 - 10 t3^2/3 + 4 t4 t5 - 208 t2 + 8 t4",
        "4 t1 t2 t5 - 176 t1 t2 - 8 t3 t4/3 + 6 t5^2 + 528 t5 - 42 t6 + 3888",
        "32 t2^2 + 4 t2 t4 - 2 t3 t5 - 224 t1 - 44 t3",
        "-128 t1^2 t2 + 5 t1 t5^2 + 3 t2 t4 t5 + 320 t1 t5 - 32 t1 t6 + 576 t2^2 + 104 t2 t4"
        " - t3 t5 - 4 t3 t6 + 5 t4^2 + 192 t1 - 312 t3",
        // row 4
        "16 t1^2 t2 - 36 t1 t5 + 2 t1 t6 - 64 t2^2 - 24 t2 t4 + 4 t3 t5 - 10 t4^2/3 - 208 t1 + 8 t3",
        "32 t1^2 + 4 t1 t3 - 2 t4 t5 - 224 t2 - 44 t4",
        "-128 t1 t2^2 + 3 t1 t3 t5 + 5 t2 t5^2 + 576 t1^2 + 104 t1 t3 + 320 t2 t5"
        " - 32 t2 t6 + 5 t3^2 - t4 t5 - 4 t4 t6 + 192 t2 - 312 t4",
        // row 5
        "16 t1 t2 - 2 t5^2 - 36 t5 + 2 t6 - 144",
        "-96 t1 t2 + 3 t3 t4 + 15 t5^2 - 3 t5 t6 + 216 t5 - 12 t6 + 864",
        // row 6
        "-64 t1^2 t2^2 + 4 t1 t2 t5^2 + 256 t1^3 + 32 t1^2 t3 + 80 t1 t2 t5 - 24 t1 t2 t6 + 4 t1 t3^2"
        " - 16 t1 t4 t5 + 256 t2^3 + 32 t2^2 t4 - 16 t2 t3 t5 + 4 t2 t4^2 + 2 t3 t4 t5"
        " + 6 t5^3 - 2112 t1 t2 - 96 t1 t4 - 96 t2 t3 + 84 t3 t4 + 216 t5^2 + 36 t5 t6 - 6 t6^2"
        " + 2592 t5 + 288 t6 + 10368",
    },
    {
        "-(4 (6 + nu)/3) t1",
        "-(4 (6 + nu)/3) t2",
        "-(1/18) ((1 - nu) (t1^2 + 5 t1 t2 + 9 t2^2 - 15 t2 - 54 t4 - 45 t5 - 405)"
        " + 30 (13 + 3 nu) t1 + (171 + 49 nu) t3)",
        "-(1/18) ((1 - nu) (9 t1^2 + 5 t1 t2 + t2^2 - 15 t1 - 54 t3 - 45 t5 - 405)"
        " + 30 (13 + 3 nu) t2 + (171 + 49 nu) t4)",
        "-(1/108) (1 - nu) (2 (t1^2 + t1 t2 + t2^2) - 30 (t1 + t2) - 3 (t3 + t4))"
        " - (13 (5 + nu)/6) t5 - (3/2) (47 + nu)",
        "((1 - nu)/108) (2 (t1^3 + 2 t1^2 t2 + 2 t1 t2^2 + t2^3)"
        " - 3 (26 t1^2 + 9 t1 t3 + 11 t1 t4 + 12 t1 t5 + 26 t2^2 + 11 t2 t3 + 9 t2 t4 + 12 t2 t5)"
        " + 3438 (t1 + t2) + 522 (t3 + t4))"
        " - ((43 + 29 nu)/3) t1 t2 + (23 + 61 nu) t5 - (20 + 7 nu) t6 + 108 (1 + 5 nu)",
    },
};

AlgebraicOperator from_fixture(const std::string& model, const Fixture& f)
{
    AlgebraicOperator op = AlgebraicOperator::zero(model, f.nvars);
    op.char_vector = f.char_vector;
    std::size_t k = 0;
    for (int a = 0; a < f.nvars; ++a)
        for (int b = a; b < f.nvars; ++b) {
            TauPoly p = parse_tau_poly(f.a.at(k++), f.nvars);
            op.A[a][b] = p;
            op.A[b][a] = p;
        }
    for (int a = 0; a < f.nvars; ++a)
        op.B[a] = parse_tau_poly(f.b.at(a), f.nvars);
    return op;
}

// eta_k for the A_N table: eta_0 = eta_{N+1} = 1, zero outside [0, N+1].
TauPoly eta_a(int n, int k)
{
    if (k == 0 || k == n + 1)
        return TauPoly::constant(n, ParamScalar(1));
    if (k < 0 || k > n + 1)
        return TauPoly(n);
    return TauPoly::variable(n, k - 1);
}

AlgebraicOperator table_a(int n)
{
    AlgebraicOperator op = AlgebraicOperator::zero("A" + std::to_string(n), n);
    const ParamScalar nu = ParamScalar::symbol(Param::Nu);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            TauPoly a = (eta_a(n, i) * eta_a(n, j)).scaled(make_rational((n + 1 - i) * j, n + 1));
            for (int l = std::max(1, j - i); l <= n + 1; ++l) {
                const TauPoly t = eta_a(n, i + l) * eta_a(n, j - l);
                a += t.scaled(Rational(j - i - 2 * l));
            }
            op.A[i - 1][j - 1] = a;
            op.A[j - 1][i - 1] = a;
        }
    for (int i = 1; i <= n; ++i) {
        const ParamScalar c = (ParamScalar(make_rational(1, n + 1)) + nu).scaled(Rational(i * (n + 1 - i)));
        op.B[i - 1] = eta_a(n, i).scaled(c);
    }
    return op;
}

// eta_k for the BC_N table: eta_0 = 1, zero for k < 0 or k > N.
TauPoly eta_bc(int n, int k)
{
    if (k == 0)
        return TauPoly::constant(n, ParamScalar(1));
    if (k < 0 || k > n)
        return TauPoly(n);
    return TauPoly::variable(n, k - 1);
}

TauPoly bc_entry(int n, int i, int j)
{
    TauPoly a = (eta_bc(n, i - 1) * eta_bc(n, j - 1)).scaled(Rational(n));
    for (int l = 0; l <= n + 2; ++l) {
        TauPoly s(n);
        s += (eta_bc(n, i - l) * eta_bc(n, j + l)).scaled(Rational(i - l));
        s += (eta_bc(n, i - l - 1) * eta_bc(n, j + l - 1)).scaled(Rational(l + j - 1));
        s -= (eta_bc(n, i - 2 - l) * eta_bc(n, j + l)).scaled(Rational(i - 2 - l));
        s -= (eta_bc(n, i - l - 1) * eta_bc(n, j + l + 1)).scaled(Rational(l + j + 1));
        a -= s;
    }
    return a;
}

AlgebraicOperator table_bc(const ModelId& id)
{
    const int n = id.rank;
    AlgebraicOperator op = AlgebraicOperator::zero(id.name(), n);
    const ParamScalar nu = ParamScalar::symbol(Param::Nu);
    const ParamScalar nu2 = ParamScalar::symbol(Param::Nu2);
    const ParamScalar nu3 = ParamScalar::symbol(Param::Nu3);
    // printed for i <= j; the lower triangle follows by symmetry
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            const TauPoly a = bc_entry(n, i, j);
            op.A[i - 1][j - 1] = a;
            op.A[j - 1][i - 1] = a;
        }
    for (int i = 1; i <= n; ++i) {
        TauPoly b = eta_bc(n, i - 1).scaled(nu3.scaled(Rational(i - n - 1)));
        const ParamScalar c = ParamScalar(1) + nu.scaled(Rational(2 * n - i - 1)) + nu2.scaled(Rational(2)) + nu3;
        b -= eta_bc(n, i).scaled(c.scaled(Rational(i)));
        b -= eta_bc(n, i - 2).scaled(nu.scaled(Rational((n - i + 1) * (n - i + 2))));
        op.B[i - 1] = b;
    }
    // eta_k = tau_k / 2^k
    std::vector<Rational> s;
    for (int k = 1; k <= n; ++k)
        s.push_back(Rational(1, 1 << k));
    for (int a = 0; a < n; ++a) {
        op.B[a] = op.B[a].rescaled(s).scaled(Rational(1 << (a + 1)));
        for (int b = 0; b < n; ++b)
            op.A[a][b] = op.A[a][b].rescaled(s).scaled(Rational(1 << (a + b + 2)));
    }
    ParamBinding pins;
    if (id.family == ModelFamily::B || id.family == ModelFamily::D)
        pins[Param::Nu2] = 0;
    if (id.family == ModelFamily::C || id.family == ModelFamily::D)
        pins[Param::Nu3] = 0;
    if (!pins.empty())
        op = op.substitute_params(pins);
    return op;
}

} // namespace

AlgebraicOperator reference_table(const ModelId& model)
{
    switch (model.family) {
    case ModelFamily::A: return table_a(model.rank);
    case ModelFamily::B:
    case ModelFamily::C:
    case ModelFamily::D: {
        // specializations of the BC table with the pinned couplings set to zero
        ParamBinding pinned;
        for (Param p : build_chart(model)->pinned_symbols())
            pinned[p] = Rational(0);
        AlgebraicOperator op = table_bc(model).substitute_params(pinned);
        op.model = model.name();
        return op;
    }
    case ModelFamily::BC: return table_bc(model);
    case ModelFamily::G2: return from_fixture("G2", kG2);
    case ModelFamily::F4: return from_fixture("F4", kF4);
    case ModelFamily::E6: return from_fixture("E6", kE6);
    }
    throw ConfigurationError("no reference table for " + model.name());
}

} // namespace triginv
