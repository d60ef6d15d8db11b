#include "burstlink/error.hpp"

namespace burstlink {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::infeasible_config: return "infeasible-config";
    case ErrorCode::unsupported_scheme: return "unsupported-scheme";
    case ErrorCode::calibration: return "calibration";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::under_determined: return "under-determined";
    case ErrorCode::input: return "input";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

} // namespace burstlink
