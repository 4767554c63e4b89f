#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace exempt {

// All monetary arithmetic is exact integer cents. kUnlimited is the
// saturating "no cap" sentinel; use cap_add/cap_sub when sums may touch it.
using Cents = std::int64_t;

inline constexpr Cents kUnlimited = std::numeric_limits<Cents>::max();

inline bool is_unlimited(Cents c) { return c == kUnlimited; }

Cents cap_add(Cents a, Cents b);

// max(a - b, 0); unlimited minus anything stays unlimited.
Cents cap_sub(Cents a, Cents b);

// Accepts "$30,850", "30850", "1,305.00", "225.5"; strips currency symbols,
// commas and whitespace; sub-cent digits round half to even. Returns nullopt
// on anything that is not a plain decimal amount.
std::optional<Cents> parse_money(std::string_view text);

enum class MoneyStyle {
    CommaCents, // $1,305.00
    Comma,      // $1,305
    PlainCents, // $1305.00
};

std::string format_money(Cents cents, MoneyStyle style);

// Canonical display form, e.g. "$30,850.00".
inline std::string format_money(Cents cents) { return format_money(cents, MoneyStyle::CommaCents); }

// Bare number of whole dollars when cents divide evenly, else two decimals;
// used in JSON-ish contexts where "$" and "," are disallowed.
std::string format_bare_dollars(Cents cents);

} // namespace exempt
