#pragma once

#include "burstlink/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string_view>

namespace burstlink::model {

/// Workload JSON; unknown keys are rejected with Error(input). Missing keys
/// keep their defaults.
[[nodiscard]] WorkloadSpec workload_from_json(const nlohmann::json& j, WorkloadSpec base = {});
[[nodiscard]] nlohmann::json to_json(const WorkloadSpec& w);
[[nodiscard]] nlohmann::json to_json(const ScenarioOverlay& o);
[[nodiscard]] nlohmann::json to_json(const DisplayConfig& d);

/// Run configuration file:
/// { "workload": {...}, "system": {...}, "calibration": "path", "reference": "baseline" }
/// Only "workload" is required. "system" overrides fields of the calibration's system.
struct RunConfig {
    WorkloadSpec workload;
    std::optional<nlohmann::json> system;
    std::optional<std::filesystem::path> calibration; ///< resolved against the config's directory
    std::optional<Scheme> reference = Scheme::baseline;
};

[[nodiscard]] RunConfig run_config_from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base_dir = {});
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

} // namespace burstlink::model
