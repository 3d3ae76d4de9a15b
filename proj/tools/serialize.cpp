#include "serialize.hpp"

#include "triginv/errors.hpp"

namespace triginv::cli {

std::string rational_text(const Rational& q)
{
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

json to_json(const Rational& q) { return rational_text(q); }

json to_json(const ParamScalar& s)
{
    json out = json::array();
    for (const auto& [e, c] : s.terms()) {
        json params = json::object();
        for (std::size_t k = 0; k < kParamCount; ++k)
            if (e[k] != 0)
                params[param_name(static_cast<Param>(k))] = e[k];
        out.push_back({{"params", params}, {"re", rational_text(c.re)}, {"im", rational_text(c.im)}});
    }
    return out;
}

json to_json(const TauPoly& p)
{
    json vars = json::array();
    for (int i = 0; i < p.nvars(); ++i)
        vars.push_back("t" + std::to_string(i + 1));
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json ex = json::array();
        for (int i = 0; i < p.nvars(); ++i)
            ex.push_back(e[i]);
        terms.push_back({{"exp", ex}, {"coeff", to_json(c)}});
    }
    return {{"vars", vars}, {"terms", terms}};
}

json to_json(const CoordVector& v)
{
    json out = json::array();
    for (const auto& q : v.entries())
        out.push_back(rational_text(q));
    return out;
}

json to_json(const ExpSum& f)
{
    json terms = json::array();
    for (const auto& [w, c] : f.sorted_terms())
        terms.push_back({{"weight", to_json(f.chart()->to_coord(w))}, {"coeff", to_json(c)}});
    return {{"model", f.chart()->name()}, {"terms", terms}};
}

json to_json(const AlgebraicOperator& op)
{
    json a = json::array();
    for (const auto& row : op.A) {
        json r = json::array();
        for (const auto& e : row)
            r.push_back(to_json(e));
        a.push_back(r);
    }
    json b = json::array();
    for (const auto& e : op.B)
        b.push_back(to_json(e));
    return {{"model", op.model}, {"A", a}, {"B", b}, {"c0", to_json(op.c0)}, {"char_vector", op.char_vector}};
}

json to_json(const ModelChart& chart)
{
    json form = json::array();
    for (int i = 0; i < chart.ambient_dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < chart.ambient_dim(); ++j)
            row.push_back(rational_text(chart.form()(i, j)));
        form.push_back(row);
    }
    json simple = json::array();
    for (const auto& r : chart.simple_roots())
        simple.push_back(to_json(r));
    json roots = json::array();
    for (std::size_t i = 0; i < chart.positive_roots().size(); ++i) {
        const auto& r = chart.positive_roots()[i];
        const auto ex = root_exponent(chart, i);
        roots.push_back({{"vector", to_json(r.vector)},
                         {"length_class", r.length_class},
                         {"exponent", ex ? json(param_name(*ex)) : json(nullptr)}});
    }
    json seeds = json::array();
    for (const auto& s : chart.fundamental_seeds())
        seeds.push_back(to_json(s));
    json coupling = json::object();
    for (const auto& [cls, p] : chart.coupling_classes())
        coupling[cls] = param_name(p);
    json pinned = json::array();
    for (Param p : chart.pinned_symbols())
        pinned.push_back(param_name(p));
    return {{"model", chart.name()},
            {"rank", chart.rank()},
            {"ambient_dim", chart.ambient_dim()},
            {"form", form},
            {"simple_roots", simple},
            {"positive_roots", roots},
            {"fundamental_seeds", seeds},
            {"coupling_classes", coupling},
            {"pinned", pinned},
            {"scale_convention", rational_text(chart.scale_convention())},
            {"char_vector", chart.char_vector()},
            {"weyl_order", weyl_group_order(chart)}};
}

json to_json(const FlagReport& r)
{
    json out = {{"pass", r.pass}, {"alpha", r.alpha}, {"n_max", r.n_max}, {"checked", r.checked}};
    if (!r.pass)
        out["violation"] = {{"witness", r.witness},
                            {"witness_degree", r.witness_degree},
                            {"offending_term", r.offending_term},
                            {"image_degree", r.image_degree}};
    return out;
}

json to_json(const OracleReport& r)
{
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial}, {"y", f.y}, {"monomial", f.monomial}, {"rel_dev", f.rel_dev}});
    return {{"model", r.model},         {"seed", r.seed},
            {"trials", r.trials},       {"h", r.h},
            {"tolerance", r.tolerance}, {"max_rel_dev", r.max_rel_dev},
            {"failures", failures}};
}

json to_json(const CurvatureReport& r)
{
    return {{"max_abs", r.max_abs},
            {"max_condition", r.max_condition},
            {"points_used", r.points_used},
            {"notices", r.notices}};
}

json params_to_json(const ParamBinding& b)
{
    json out = json::object();
    for (const auto& [p, v] : b)
        out[param_name(p)] = rational_text(v);
    return out;
}

} // namespace triginv::cli
