#pragma once

// JSON encodings of every report type. Floating point values are written as
// strings in scientific notation at the full precision of the mode that
// produced them; counts and orders stay JSON integers.

#include "json.hpp"

#include "loewner/classify.hpp"
#include "loewner/repro.hpp"
#include "loewner/witness.hpp"

namespace loewner {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1.0";

nlohmann::ordered_json to_json(const Interval& i);
nlohmann::ordered_json to_json(const WitnessRecord& w);
nlohmann::ordered_json to_json(const ClassificationReport& r);
nlohmann::ordered_json to_json(const BatteryReport& r);
nlohmann::ordered_json to_json(const TheoremReport& r);
nlohmann::ordered_json to_json(const WitnessSearchResult& r);
nlohmann::ordered_json to_json(const ScenarioReport& r);

}  // namespace loewner
