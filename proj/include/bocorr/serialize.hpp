#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "bocorr/series.hpp"

namespace bocorr {

// {"truncation": "10", "terms": [{"q": "3/2", "z": {"1": -2}, "c": "-4/9"}, ...]}
// Terms appear in ascending (q, z) order; exponents are "a/2" or integer strings.
nlohmann::json to_json(const Series& s);
// Inverse of to_json. Also accepts "q2" (doubled exponent) in place of "q".
Series series_from_json(const nlohmann::json& j);

// "# truncation=N", then the header q_num,z,coeff_num,coeff_den and one row per
// term: doubled q-exponent, z written as "1:-2;2:1", numerator, denominator.
std::string to_csv(const Series& s);
Series series_from_csv(std::string_view text);
// Aligned human-readable table.
std::string to_pretty(const Series& s);

}  // namespace bocorr
