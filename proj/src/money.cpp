#include "exempt/money.hpp"

#include <cctype>
#include <cstdlib>

namespace exempt {

Cents cap_add(Cents a, Cents b) {
    if (is_unlimited(a) || is_unlimited(b)) return kUnlimited;
    if (a > kUnlimited - b) return kUnlimited;
    return a + b;
}

Cents cap_sub(Cents a, Cents b) {
    if (is_unlimited(a)) return kUnlimited;
    if (b >= a) return 0;
    return a - b;
}

std::optional<Cents> parse_money(std::string_view text) {
    std::string digits;
    digits.reserve(text.size());
    bool negative = false;
    bool seen_digit = false;
    bool seen_dot = false;
    std::string frac;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isspace(c) || ch == '$' || ch == ',') continue;
        if (ch == '-' && !seen_digit && !negative && !seen_dot) {
            negative = true;
            continue;
        }
        if (ch == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(c)) return std::nullopt;
        seen_digit = true;
        (seen_dot ? frac : digits).push_back(ch);
    }
    if (!seen_digit) return std::nullopt;
    if (digits.size() > 15) return std::nullopt;

    Cents whole = digits.empty() ? 0 : std::strtoll(digits.c_str(), nullptr, 10);
    Cents cents = whole * 100;

    // Two fraction digits are cents; anything beyond rounds half to even.
    std::string f = frac;
    while (f.size() < 2) f.push_back('0');
    cents += (f[0] - '0') * 10 + (f[1] - '0');
    std::string_view tail{f.data() + 2, f.size() - 2};
    if (!tail.empty()) {
        bool nonzero_after = tail.find_first_not_of('0', 1) != std::string_view::npos;
        if (tail[0] > '5' || (tail[0] == '5' && nonzero_after)) {
            cents += 1;
        } else if (tail[0] == '5' && !nonzero_after) {
            if (cents % 2 != 0) cents += 1;
        }
    }
    return negative ? -cents : cents;
}

namespace {

std::string group_thousands(std::string digits) {
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count == 3) {
            out.push_back(',');
            count = 0;
        }
        out.push_back(*it);
        ++count;
    }
    return {out.rbegin(), out.rend()};
}

} // namespace

std::string format_money(Cents cents, MoneyStyle style) {
    bool negative = cents < 0;
    if (negative) cents = -cents;
    Cents dollars = cents / 100;
    int rem = static_cast<int>(cents % 100);
    std::string whole = std::to_string(dollars);
    std::string out = negative ? "-$" : "$";
    switch (style) {
    case MoneyStyle::CommaCents:
        out += group_thousands(whole);
        out += '.';
        out += static_cast<char>('0' + rem / 10);
        out += static_cast<char>('0' + rem % 10);
        break;
    case MoneyStyle::Comma:
        out += group_thousands(whole);
        if (rem != 0) {
            out += '.';
            out += static_cast<char>('0' + rem / 10);
            out += static_cast<char>('0' + rem % 10);
        }
        break;
    case MoneyStyle::PlainCents:
        out += whole;
        out += '.';
        out += static_cast<char>('0' + rem / 10);
        out += static_cast<char>('0' + rem % 10);
        break;
    }
    return out;
}

std::string format_bare_dollars(Cents cents) {
    bool negative = cents < 0;
    if (negative) cents = -cents;
    std::string out = negative ? "-" : "";
    out += std::to_string(cents / 100);
    int rem = static_cast<int>(cents % 100);
    if (rem != 0) {
        out += '.';
        out += static_cast<char>('0' + rem / 10);
        out += static_cast<char>('0' + rem % 10);
    }
    return out;
}

} // namespace exempt
