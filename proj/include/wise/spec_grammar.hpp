#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wise::detail {

/// `family[:k=v,...]` split into its name and ordered key/value pairs.
struct ParsedSpec {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;
};

ParsedSpec split_spec(std::string_view text);
double parse_real(std::string_view key, std::string_view value);
std::size_t parse_count(std::string_view key, std::string_view value);
std::string format_real(double x);

}  // namespace wise::detail
