#pragma once

#include <json.hpp>

#include "supalg/crossratio.hpp"
#include "supalg/jordan.hpp"
#include "supalg/liealg.hpp"
#include "supalg/vectorfield.hpp"

namespace supalg {

using Json = nlohmann::ordered_json;

// All parsers are strict: unknown fields are rejected, indices are 0-based,
// rationals travel as "num/den" strings. Round trips are bit-exact.

Json context_to_json(const VariableContext::Ptr& ctx);
VariableContext::Ptr context_from_json(const Json& j);

// term list: [{"even": [...], "odd": [...], "c": "num/den"}, ...]
Json poly_to_json(const SuperPolynomial& p);
SuperPolynomial poly_from_json(const Json& j, const VariableContext::Ptr& ctx);

Json matrix_to_json(const SuperMatrix& m);
SuperMatrix matrix_from_json(const Json& j);

Json algebra_to_json(const LieSuperAlgebra& g);
LieSuperAlgebra algebra_from_json(const Json& j);

Json jordan_to_json(const JordanSuperAlgebra& j);
JordanSuperAlgebra jordan_from_json(const Json& j);

Json field_to_json(const PolyVectorField& f);
PolyVectorField field_from_json(const Json& j);

Json quadruple_to_json(const PointQuadruple& q);
PointQuadruple quadruple_from_json(const Json& j);

Json grading_report_to_json(const GradingReport& rep);

// FNV-1a over raw bytes, for reproducibility stamps in reports.
std::string digest(const std::string& bytes);

} // namespace supalg
