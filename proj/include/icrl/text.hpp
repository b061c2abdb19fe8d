#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace icrl {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
/// Splits on runs of whitespace and commas.
std::vector<std::string> tokens(std::string_view s);
/// Lowercased tokens joined by single spaces.
std::string canonical_lower(std::string_view s);
bool parse_int(std::string_view s, int& out);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace icrl
