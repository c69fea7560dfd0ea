#pragma once

#include <string>
#include <string_view>

namespace skeptic {

// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

// Standard base64 with padding.
std::string base64_encode(std::string_view data);

}  // namespace skeptic
