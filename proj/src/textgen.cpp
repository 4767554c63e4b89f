#include "exempt/textgen.hpp"

#include "exempt/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>

namespace exempt {

using nlohmann::ordered_json;

namespace {

const char* kMonths[] = {"January", "February", "March",     "April",   "May",      "June",
                         "July",    "August",   "September", "October", "November", "December"};
const char* kWeekdays[] = {"Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

std::string ordinal(unsigned day) {
    std::string out = std::to_string(day);
    unsigned mod100 = day % 100;
    unsigned mod10 = day % 10;
    if (mod100 >= 11 && mod100 <= 13) return out + "th";
    if (mod10 == 1) return out + "st";
    if (mod10 == 2) return out + "nd";
    if (mod10 == 3) return out + "rd";
    return out + "th";
}

} // namespace

const std::vector<std::string>& TemplateLibrary::group(const std::string& name) const {
    if (name == "filing") return filing;
    if (name == "first_domicile") return first_domicile;
    if (name == "relocation") return relocation;
    if (name == "ownership") return ownership;
    if (name == "irrelevant_residence") return irrelevant_residence;
    if (name == "residence_purposes") return residence_purposes;
    if (name == "asset_opinions") return asset_opinions;
    if (name == "domicile_opinions") return domicile_opinions;
    throw MissingTemplate("unknown template group: " + name);
}

std::string TemplateLibrary::city_for(const std::string& state, Rng& rng) const {
    auto it = cities.find(state);
    if (it == cities.end() || it->second.empty()) {
        throw MissingTemplate("no cities configured for state: " + state);
    }
    return it->second[rng.below(it->second.size())];
}

TemplateLibrary load_template_library(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read template library: " + path.string());
    ordered_json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw DataError(std::string("bad template library: ") + e.what());
    }
    TemplateLibrary lib;
    auto strings = [&](const char* key) {
        return doc.at(key).get<std::vector<std::string>>();
    };
    lib.first_names = strings("first_names");
    lib.last_names = strings("last_names");
    for (const auto& [state, list] : doc.at("cities").items()) {
        lib.cities[state] = list.get<std::vector<std::string>>();
    }
    lib.filing = strings("filing");
    lib.first_domicile = strings("first_domicile");
    lib.relocation = strings("relocation");
    lib.ownership = strings("ownership");
    lib.irrelevant_residence = strings("irrelevant_residence");
    lib.residence_purposes = strings("residence_purposes");
    lib.asset_opinions = strings("asset_opinions");
    lib.domicile_opinions = strings("domicile_opinions");

    const char* groups[] = {"filing",       "first_domicile",  "relocation",
                            "ownership",    "irrelevant_residence", "residence_purposes",
                            "asset_opinions", "domicile_opinions"};
    for (const char* g : groups) {
        if (lib.group(g).empty()) throw DataError(std::string("empty template group: ") + g);
    }
    return lib;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots) {
    std::string out;
    out.reserve(tmpl.size() + 32);
    for (size_t i = 0; i < tmpl.size();) {
        if (tmpl[i] != '{') {
            out.push_back(tmpl[i]);
            ++i;
            continue;
        }
        size_t close = tmpl.find('}', i);
        if (close == std::string::npos) throw MissingTemplate("unterminated slot in: " + tmpl);
        std::string name = tmpl.substr(i + 1, close - i - 1);
        auto it = slots.find(name);
        if (it == slots.end()) throw MissingTemplate("unfilled slot {" + name + "} in: " + tmpl);
        out += it->second;
        i = close + 1;
    }
    return out;
}

std::string pick_and_render(const TemplateLibrary& lib, const std::string& group,
                            const std::map<std::string, std::string>& slots, Rng& rng) {
    const auto& pool = lib.group(group);
    if (pool.empty()) throw MissingTemplate("empty template group: " + group);
    return render_template(pool[rng.below(pool.size())], slots);
}

std::string format_date_style(Date d, int style) {
    std::chrono::year_month_day ymd{d};
    int year = static_cast<int>(ymd.year());
    unsigned month = static_cast<unsigned>(ymd.month());
    unsigned day = static_cast<unsigned>(ymd.day());
    std::chrono::weekday wd{d};
    switch (((style % kDateStyleCount) + kDateStyleCount) % kDateStyleCount) {
    case 0: // 14 July 2024
        return std::to_string(day) + " " + kMonths[month - 1] + " " + std::to_string(year);
    case 1: // March 7th 2024
        return std::string(kMonths[month - 1]) + " " + ordinal(day) + " " + std::to_string(year);
    case 2: // 9.10.2021
        return std::to_string(month) + "." + std::to_string(day) + "." + std::to_string(year);
    case 3: // 12th of September, 2021
        return ordinal(day) + " of " + kMonths[month - 1] + ", " + std::to_string(year);
    case 4: // Saturday, March 21st, 2020
        return std::string(kWeekdays[wd.c_encoding()]) + ", " + kMonths[month - 1] + " " +
               ordinal(day) + ", " + std::to_string(year);
    default: // 10th day of January, 2024
        return ordinal(day) + " day of " + kMonths[month - 1] + ", " + std::to_string(year);
    }
}

std::string format_money_style(Cents cents, int style) {
    switch (((style % kMoneyStyleCount) + kMoneyStyleCount) % kMoneyStyleCount) {
    case 0: return format_money(cents, MoneyStyle::CommaCents);
    case 1: return format_money(cents, MoneyStyle::Comma);
    default: return format_money(cents, MoneyStyle::PlainCents);
    }
}

std::string join_with_and(const std::vector<std::string>& items) {
    if (items.empty()) return {};
    if (items.size() == 1) return items[0];
    if (items.size() == 2) return items[0] + " and " + items[1];
    std::string out;
    for (size_t i = 0; i + 1 < items.size(); ++i) {
        out += items[i];
        out += ", ";
    }
    out += "and " + items.back();
    return out;
}

std::string with_article(const std::string& description, bool capitalize) {
    bool vowel = false;
    if (!description.empty()) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(description[0])));
        vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
    }
    std::string article = vowel ? (capitalize ? "An " : "an ") : (capitalize ? "A " : "a ");
    return article + description;
}

} // namespace exempt
