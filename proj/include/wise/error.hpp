#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wise {

enum class Errc {
    InvalidValue,
    TooFewObservations,
    ShapeMismatch,
    NotAQuantile,
    KernelMismatch,
    BadWeightParam,
    ParseError,
    TooLarge,
    DegenerateVariance,
    BadModelParam,
    BadRange,
    BadPlan,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace wise
