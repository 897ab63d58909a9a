#pragma once

#include <string>
#include <string_view>

namespace cognate {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);

}  // namespace cognate
