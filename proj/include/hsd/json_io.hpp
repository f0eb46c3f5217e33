#pragma once

#include <string>

#include "json.hpp"

#include "hsd/integrate.hpp"
#include "hsd/verify.hpp"

namespace hsd {

using Json = nlohmann::json;

// series wire format: arrays of rational-function strings indexed by
// exponent; bivariate series nest one array per first-variable exponent
Json series_to_json(const TruncSeries& s);

// {"p": 2, "m": 2, "gen_image": ["t", "1", ...]} for truncated derivations,
// {"p": 2, "precision": 16, "gen_image": [...]} for formal ones; the array
// index is the X-exponent and missing trailing entries are zero
Json derivation_to_json(const HSDerivation& d);
HSDerivation derivation_from_json(const Json& j);

std::string law_name(LawTag tag);

Json canonical_to_json(const CanonicalElement& e, const CanonicalCheckReport& rep);

Json integration_to_json(const IntegrationResult& r, LawTag tag);

// per-case suite results; seconds are included only when timings is set so
// the default document is reproducible for a fixed config
Json report_to_json(const SuiteReport& rep, bool timings);

} // namespace hsd
