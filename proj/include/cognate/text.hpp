#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cognate {

// UTF-8 <-> UTF-32. Decoding throws DataError on ill-formed input
// (overlong forms, surrogates, truncated sequences).
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);

// Formats with a fixed number of decimals ("%.Nf"); -0.0 prints as 0.
std::string format_fixed(double value, int decimals);

}  // namespace cognate
