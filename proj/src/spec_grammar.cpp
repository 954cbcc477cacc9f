#include "wise/spec_grammar.hpp"

#include <charconv>
#include <cmath>

#include "wise/error.hpp"

namespace wise::detail {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

ParsedSpec split_spec(std::string_view text) {
    text = trim(text);
    ParsedSpec out;
    const auto colon = text.find(':');
    out.family = std::string(trim(text.substr(0, colon)));
    if (out.family.empty()) fail(Errc::ParseError, "empty family name in '" + std::string(text) + "'");
    if (colon == std::string_view::npos) return out;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
            fail(Errc::ParseError, "expected key=value, got '" + std::string(item) + "'");
        }
        out.params.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(x)) {
        fail(Errc::ParseError, "parameter '" + std::string(key) + "' is not a real number: '" +
                                   std::string(value) + "'");
    }
    return x;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(Errc::ParseError, "parameter '" + std::string(key) + "' is not a nonnegative integer: '" +
                                   std::string(value) + "'");
    }
    return x;
}

std::string format_real(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, ec == std::errc{} ? ptr : buf};
}

}  // namespace wise::detail
