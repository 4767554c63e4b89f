#pragma once

#include <string>

namespace exempt {

// The five-stage reasoning pipeline, in order. Numeric values match the
// start/terminal task ids used in configuration files.
enum class Task : int {
    AE = 1, // allowable exemption jurisdictions
    EC = 2, // per-asset exemption classification
    EV = 3, // per-asset, per-exemption maximum protectable value
    NA = 4, // minimal non-exempt value per jurisdiction
    OE = 5, // optimal exemption schedule
};

const char* task_name(Task t);
Task task_from_name(const std::string& name); // throws UsageError

} // namespace exempt
