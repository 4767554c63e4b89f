#pragma once

#include <string>
#include <string_view>

namespace exempt {

// Hex digest; used for content-addressed components and corpus hashes.
std::string sha256_hex(std::string_view data);

} // namespace exempt
