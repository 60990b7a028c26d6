#pragma once

#include <string>

#include "aomega/decalage.hpp"
#include "aomega/suites.hpp"
#include "aomega/torus.hpp"
#include "aomega/witt.hpp"
#include "json.hpp"

namespace aomega::io {

// Big integers are written as decimal strings; inputs may use strings or
// JSON integers.
using Json = nlohmann::ordered_json;

Json to_json(const SessionConfig& c);
Json to_json(const Report& r);
Json to_json(const SuiteOutcome& s);

Json to_json(const IntMatrix& m);
Json to_json(const IntComplex& k);
Json to_json(const HomologyPresentation<Integer>& h);
Json to_json(const TorusHomology& h);
Json to_json(const std::map<int, std::size_t>& table);
Json to_json(const TorusCell& cell);
/// Box, rank table, the distinct cell outcomes and the nonzero cells by grading.
Json to_json(const TorusCohomologyResult& r);
Json to_json(const SemicontinuityResult& s);

Json to_json(const PerfectionElement& a);
Json to_json(const TruncatedWittElement& w);

Integer integer_from_json(const Json& j);
/// "k" or "k/p^e" written out, e.g. "2/9".
RationalExponent exponent_from_string(std::int64_t p, const std::string& s);
/// {"lo": 0, "ranks": [1, 1], "diffs": [[["4"]]]}.
IntComplex int_complex_from_json(const Json& j);
/// {"terms": [{"exponent": "1/3", "coeff": "8"}, ...]}; a bare integer is a constant.
TruncatedWittElement witt_from_json(const Json& j, std::int64_t p, int precision);

}  // namespace aomega::io
