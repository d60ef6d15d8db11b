#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace burstlink {

enum class ErrorCode {
    invalid_config,
    infeasible_config,
    unsupported_scheme,
    calibration,
    consistency,
    under_determined,
    input,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace burstlink
