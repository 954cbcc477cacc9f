#include "wise/error.hpp"

namespace wise {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidValue: return "InvalidValue";
        case Errc::TooFewObservations: return "TooFewObservations";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NotAQuantile: return "NotAQuantile";
        case Errc::KernelMismatch: return "KernelMismatch";
        case Errc::BadWeightParam: return "BadWeightParam";
        case Errc::ParseError: return "ParseError";
        case Errc::TooLarge: return "TooLarge";
        case Errc::DegenerateVariance: return "DegenerateVariance";
        case Errc::BadModelParam: return "BadModelParam";
        case Errc::BadRange: return "BadRange";
        case Errc::BadPlan: return "BadPlan";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace wise
