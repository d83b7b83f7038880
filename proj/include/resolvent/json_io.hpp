#pragma once

// JSON forms used by the CLI and fixtures.
//
//   module  {"modulus": m, "factors": [d1, ...]}
//   map     {"dom": module, "cod": module, "matrix": [[...], ...]}   (row-major)
//   object  {"augmented": b, "modulus": m,
//            "levels": [{"factors": [...], "faces": [matrix...], "degeneracies": [matrix...]}]}
//
// Readers throw InputError on malformed input.

#include "json.hpp"
#include "resolvent/workbench.hpp"

namespace resolvent {

using Json = nlohmann::ordered_json;

Json to_json(const FpModule& m);
Json to_json(const ResidueMatrix& a);
Json to_json(const ModuleMap& f);
Json to_json(const AugSimplicialObject& a);

FpModule module_from_json(const Json& j);
ModuleMap map_from_json(const Json& j);
AugSimplicialObject simplicial_from_json(const Json& j, Validation v = Validation::FacesOnly);

// Factors as "Z/2 + Z/4" plus the raw list.
Json value_json(const FpModule& m);
Json coefficients_json(const Coefficients& e);

// Report schema: {request, cells[{method, degree, value|infeasible, verdicts, millis}],
// comparisons, suite_results}. With timing off every millis is 0 so equal
// inputs give byte-identical output.
Json report_json(const ComparisonReport& r, bool timing);
Json suites_json(const std::vector<SuiteResult>& s, bool timing);
Json invariance_json(const InvarianceReport& r);

}  // namespace resolvent
