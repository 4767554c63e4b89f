#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace exempt {

std::string ascii_lower(std::string_view s);

std::string trim(std::string_view s);

// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Canonical comparison form for statute citations: case folded, whitespace
// collapsed, and the section symbol treated as its own token so that
// "§815.18" and "§ 815.18" compare equal. "sec." / "section" fold to "§".
// Idempotent.
std::string normalize_citation(std::string_view citation);

// Case-folded, whitespace-collapsed jurisdiction label ("federal",
// "wisconsin"). Trailing punctuation is stripped.
std::string normalize_jurisdiction_label(std::string_view label);

// Suffix after the LAST "FINAL ANSWER" marker (colon optional, any case),
// trimmed. nullopt when the marker is absent.
std::optional<std::string> extract_final_answer(std::string_view raw);

// First balanced JSON object or array in the text, honoring string literals
// and escapes; tolerates leading labels and trailing prose, and strips
// Markdown code fences before scanning.
std::optional<std::string> extract_balanced_json(std::string_view text);

} // namespace exempt
