#ifndef TRIGINV_TOOLS_SERIALIZE_HPP
#define TRIGINV_TOOLS_SERIALIZE_HPP

#include "triginv/exalg.hpp"
#include "triginv/flagspec.hpp"
#include "triginv/gaugeform.hpp"
#include "triginv/oracle.hpp"

#include "json.hpp"

#include <string>

namespace triginv::cli {

using json = nlohmann::ordered_json;

json to_json(const Rational& q);
json to_json(const ParamScalar& s);
json to_json(const TauPoly& p);
json to_json(const CoordVector& v);
json to_json(const ExpSum& f);
json to_json(const AlgebraicOperator& op);
json to_json(const ModelChart& chart);
json to_json(const FlagReport& r);
json to_json(const OracleReport& r);
json to_json(const CurvatureReport& r);

json params_to_json(const ParamBinding& b);

/// "p/q" or "p"
std::string rational_text(const Rational& q);

} // namespace triginv::cli

#endif
