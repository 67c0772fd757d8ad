#pragma once

#include "json.hpp"

#include "catamp/analysis.hpp"
#include "catamp/comb.hpp"
#include "catamp/optimizer.hpp"
#include "catamp/scheme.hpp"

namespace catamp {

using Json = nlohmann::ordered_json;

/// Bumped whenever a JSON layout changes.
inline constexpr int kSchemaVersion = 1;

Json to_json(const TruncationPolicy& p);
Json to_json(const SchemeConfig& cfg);
Json to_json(const CatFit& fit);
/// Scalar summary: probabilities, fits and provenance config (no matrices).
Json to_json(const SchemeResult& result);
Json to_json(const SweepPoint& point);
Json to_json(const OptReport& report);
Json to_json(const CombConfig& comb);

SchemeConfig scheme_config_from_json(const Json& j);

}  // namespace catamp
