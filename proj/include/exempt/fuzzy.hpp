#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exempt {

// Normalized indel similarity on a 0..100 scale:
// 100 * (1 - indel_distance / (|a| + |b|)).
double indel_similarity(std::string_view a, std::string_view b);

// Best indel similarity between the shorter string and any contiguous
// substring of the longer one (100 whenever the shorter string is contained
// verbatim). Empty-vs-nonempty scores 0.
double partial_ratio(std::string_view a, std::string_view b);

inline constexpr double kAssetMatchThreshold = 90.0;

// The gold description best aligned with the prediction, if any reaches the
// threshold; ties break toward the longer gold description. Matching is case
// and whitespace insensitive.
std::optional<std::string> match_asset(std::string_view predicted,
                                       const std::vector<std::string>& gold_descriptions);

} // namespace exempt
