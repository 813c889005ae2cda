#ifndef SK_IO_HPP
#define SK_IO_HPP

#include <json.hpp>

#include "sk/geometry.hpp"
#include "sk/oracle.hpp"
#include "sk/solver.hpp"

namespace sk {

using Json = nlohmann::json;

// Wire formats. Rationals are strings "p/q" (or "n"); polynomials are term
// lists with [group, slot, power] exponent triples; all orderings are
// canonical so that serialized output is diffable.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json mpoly_to_json(const MPoly& p);
MPoly mpoly_from_json(const Json& j);

Json unirational_to_json(const UniRational& u);
UniRational unirational_from_json(const Json& j);

Json factored_to_json(const FactoredRational& f);

Json htensor_to_json(const HTensor& t);
HTensor htensor_from_json(const Json& j);

Json gamma_to_json(const GammaTensor& g);
GammaTensor gamma_from_json(const Json& j, const Partition& part);

// {"partition": [...], "gammas": [...]} or a constructor shorthand
// {"kind": "veronese"|"segre"|"product_sv"|"two_point"|"decomposable",
//  "partition"/"m": ..., "pi": [...], "points": ...}.
Json structure_to_json(const FactorizationStructure& fs);
FactorizationStructure structure_from_json(const Json& j);

// {"structure": ..., "beta": ..., "profiles": [...], "formal": bool}
Json geometry_to_json(const GeometrySpec& g);
GeometrySpec geometry_from_json(const Json& j);

Json report_to_json(const CurvatureReport& r);
Json family_to_json(const SolutionFamily& f);
Json compare_to_json(const CompareSummary& s);

std::vector<Mat2> matrices_from_json(const Json& j);

}  // namespace sk

#endif
