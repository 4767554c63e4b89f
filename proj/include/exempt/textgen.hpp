#pragma once

#include "exempt/dates.hpp"
#include "exempt/estate.hpp"
#include "exempt/money.hpp"
#include "exempt/rng.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace exempt {

// Parameterized phrasing templates grouped by narrative element, plus the
// name/city pools used to populate them. Loaded from a single JSON document;
// slot coverage is checked at load so every template renders fully.
struct TemplateLibrary {
    std::vector<std::string> first_names;
    std::vector<std::string> last_names;
    std::map<std::string, std::vector<std::string>> cities; // state -> cities
    std::vector<std::string> filing;
    std::vector<std::string> first_domicile;
    std::vector<std::string> relocation;
    std::vector<std::string> ownership;
    std::vector<std::string> irrelevant_residence;
    std::vector<std::string> residence_purposes;
    std::vector<std::string> asset_opinions;
    std::vector<std::string> domicile_opinions;

    const std::vector<std::string>& group(const std::string& name) const;
    std::string city_for(const std::string& state, Rng& rng) const;
};

TemplateLibrary load_template_library(const std::filesystem::path& path);

// {slot} substitution; throws MissingTemplate when a slot has no value or a
// group is empty.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots);

std::string pick_and_render(const TemplateLibrary& lib, const std::string& group,
                            const std::map<std::string, std::string>& slots, Rng& rng);

// The prose date styles observed across fact patterns ("14 July 2024",
// "March 7th 2024", "9.10.2021", ...). All parseable by the test matchers.
inline constexpr int kDateStyleCount = 6;
std::string format_date_style(Date d, int style);

inline constexpr int kMoneyStyleCount = 3;
std::string format_money_style(Cents cents, int style);

// "A", "A and B", or "A, B, and C".
std::string join_with_and(const std::vector<std::string>& items);

// "a"/"an" + description, with optional capitalization.
std::string with_article(const std::string& description, bool capitalize);

} // namespace exempt
