#pragma once

#include "burstlink/power.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burstlink {

/// Library version, e.g. "0.3.0".
[[nodiscard]] std::string_view version() noexcept;

namespace report {

/// What produced a report. Embedded in every emitted file.
struct RunManifest {
    std::vector<std::string> config_paths; ///< config files or "preset:<name>"
    std::string command;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    std::string tool_version{burstlink::version()};
    std::string calibration;
};

[[nodiscard]] nlohmann::json to_json(const RunManifest& m);
[[nodiscard]] nlohmann::json to_json(const power::EnergyReport& r);
[[nodiscard]] nlohmann::json to_json(const power::ComponentEnergy& e);
[[nodiscard]] nlohmann::json to_json(const timeline::Residencies& r);

/// Full report with the manifest under "manifest". Keys are sorted, so the
/// text is a pure function of the inputs.
[[nodiscard]] std::string report_json(const power::EnergyReport& r, const RunManifest& m);

/// Flat rows for plotting: one header line then one row per report.
[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string csv_row(const power::EnergyReport& r, std::string_view label);

/// Header row and the manifest as leading "# key: value" comment lines.
[[nodiscard]] std::string csv_preamble(const RunManifest& m);

/// Fixed formatting shared by all CSV writers.
[[nodiscard]] std::string format_number(double v);

} // namespace report
} // namespace burstlink
