#pragma once

#include "burstlink/cstates.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace burstlink::cstates {

/// Calibration files are JSON; unknown keys are rejected with Error(input).
[[nodiscard]] CalibrationSet calibration_from_json(const nlohmann::json& j);
[[nodiscard]] CalibrationSet parse_calibration(std::string_view text);
[[nodiscard]] CalibrationSet load_calibration(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json to_json(const CalibrationSet& set);
[[nodiscard]] nlohmann::json to_json(const PowerProfile& profile);
[[nodiscard]] PowerProfile profile_from_json(const nlohmann::json& j, std::string name);

[[nodiscard]] nlohmann::json to_json(const model::SystemConfig& system);
/// Applies the keys present in `j` on top of `base`.
[[nodiscard]] model::SystemConfig system_from_json(const nlohmann::json& j,
                                                   model::SystemConfig base = {});

void save_calibration(const CalibrationSet& set, const std::filesystem::path& path);

} // namespace burstlink::cstates
