#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace exempt {

// Timezone-free proleptic Gregorian calendar days.
using Date = std::chrono::sys_days;

// Throws DataError on an invalid calendar date.
Date make_date(int year, unsigned month, unsigned day);

std::optional<Date> parse_iso_date(std::string_view text); // YYYY-MM-DD

std::string iso_date(Date d);

inline Date add_days(Date d, int days) { return d + std::chrono::days{days}; }

// Whole days from a to b; positive when b is later.
inline long days_between(Date a, Date b) {
    return (b - a).count();
}

} // namespace exempt
