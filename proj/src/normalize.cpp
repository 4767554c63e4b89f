#include "exempt/normalize.hpp"

#include <cctype>

namespace exempt {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// UTF-8 bytes of U+00A7 SECTION SIGN.
constexpr std::string_view kSection = "\xc2\xa7";

} // namespace

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

std::string normalize_citation(std::string_view citation) {
    // Fold textual "sec."/"section" markers to the symbol first, then
    // re-space around the symbol and collapse.
    std::string lowered = ascii_lower(citation);
    std::string replaced;
    replaced.reserve(lowered.size());
    for (size_t i = 0; i < lowered.size();) {
        if (lowered.compare(i, 8, "section ") == 0) {
            replaced += kSection;
            replaced += ' ';
            i += 8;
        } else if (lowered.compare(i, 5, "sec. ") == 0) {
            replaced += kSection;
            replaced += ' ';
            i += 5;
        } else {
            replaced.push_back(lowered[i]);
            ++i;
        }
    }
    std::string spaced;
    spaced.reserve(replaced.size() + 8);
    for (size_t i = 0; i < replaced.size();) {
        if (replaced.compare(i, kSection.size(), kSection) == 0) {
            spaced += ' ';
            spaced += kSection;
            spaced += ' ';
            i += kSection.size();
        } else {
            spaced.push_back(replaced[i]);
            ++i;
        }
    }
    return collapse_whitespace(spaced);
}

std::string normalize_jurisdiction_label(std::string_view label) {
    std::string out = collapse_whitespace(ascii_lower(label));
    while (!out.empty() && (out.back() == '.' || out.back() == ',' || out.back() == ';')) {
        out.pop_back();
    }
    return out;
}

std::optional<std::string> extract_final_answer(std::string_view raw) {
    const std::string lowered = ascii_lower(raw);
    const std::string_view marker = "final answer";
    size_t pos = lowered.rfind(marker);
    if (pos == std::string::npos) return std::nullopt;
    size_t start = pos + marker.size();
    while (start < raw.size() && (is_space(raw[start]) || raw[start] == ':' || raw[start] == '*')) {
        ++start;
    }
    return trim(raw.substr(start));
}

std::optional<std::string> extract_balanced_json(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    // Drop markdown fences; they otherwise hide the payload braces.
    for (size_t i = 0; i < text.size();) {
        if (text.compare(i, 3, "```") == 0) {
            i += 3;
            while (i < text.size() && !is_space(text[i])) ++i;
            continue;
        }
        cleaned.push_back(text[i]);
        ++i;
    }
    size_t open = cleaned.find_first_of("{[");
    if (open == std::string::npos) return std::nullopt;
    char open_ch = cleaned[open];
    char close_ch = open_ch == '{' ? '}' : ']';
    int depth = 0;
    bool in_string = false;
    for (size_t i = open; i < cleaned.size(); ++i) {
        char c = cleaned[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == open_ch) {
            ++depth;
        } else if (c == close_ch) {
            --depth;
            if (depth == 0) return cleaned.substr(open, i - open + 1);
        }
    }
    return std::nullopt;
}

} // namespace exempt
