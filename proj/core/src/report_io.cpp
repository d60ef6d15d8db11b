#include "burstlink/report_io.hpp"

#include <fmt/format.h>

namespace burstlink {

std::string_view version() noexcept { return BURSTLINK_VERSION_STRING; }

namespace report {

using nlohmann::json;

json to_json(const RunManifest& m) {
    json j{{"config_paths", m.config_paths},
           {"command", m.command},
           {"output_dir", m.output_dir},
           {"tool_version", m.tool_version},
           {"calibration", m.calibration}};
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    return j;
}

json to_json(const power::ComponentEnergy& e) {
    return json{{"dram_j", e.dram_j}, {"display_j", e.display_j}, {"others_j", e.others_j}, {"total_j", e.total_j}};
}

json to_json(const timeline::Residencies& r) {
    json states = json::object();
    for (auto s : kAllStates)
        if (r[s] != 0) states[std::string(to_string(s))] = r[s];
    return json{{"states", std::move(states)},
                {"transition_fraction", r.transition_fraction},
                {"total_ns", r.total.count()}};
}

json to_json(const power::EnergyReport& r) {
    json traffic = json::object();
    for (auto d : kAllDramStates) {
        const auto i = index(d);
        if (r.traffic.time[i].count() == 0 && r.traffic.read_bytes[i] == 0 && r.traffic.write_bytes[i] == 0)
            continue;
        traffic[std::string(to_string(d))] = {{"time_ns", r.traffic.time[i].count()},
                                              {"read_bytes", r.traffic.read_bytes[i]},
                                              {"write_bytes", r.traffic.write_bytes[i]}};
    }
    json windows = json::array();
    for (const auto& e : r.windows_energy) windows.push_back(to_json(e));
    json j{{"scheme", r.scheme},
           {"calibration", r.calibration},
           {"profile", r.profile},
           {"windows", r.windows},
           {"simulated_seconds", r.simulated_seconds},
           {"average_power_mw", r.average_power_mw},
           {"residencies", to_json(r.residencies)},
           {"transition_count", r.transition_count},
           {"transition_energy_j", r.transition_energy_j},
           {"energy",
            {{"total", to_json(r.total)}, {"per_window", to_json(r.per_window)}, {"per_second", to_json(r.per_second)}}},
           {"dram", {{"background_j", r.dram.background_j}, {"operating_j", r.dram.operating_j}}},
           {"traffic", std::move(traffic)},
           {"edp_bytes", r.edp_bytes},
           {"windows_energy", std::move(windows)},
           {"notes", r.notes}};
    if (r.reduction)
        j["reduction"] = {{"reference_scheme", r.reduction->reference_scheme},
                          {"reference_energy_j_per_s", r.reduction->reference_energy_j},
                          {"percent", r.reduction->percent}};
    return j;
}

std::string report_json(const power::EnergyReport& r, const RunManifest& m) {
    json j = to_json(r);
    j["manifest"] = to_json(m);
    return j.dump(2) + "\n";
}

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

std::string csv_header() {
    std::string h = "label,scheme,calibration,windows,seconds,avg_power_mw,total_j_per_s,dram_j_per_s,"
                    "display_j_per_s,others_j_per_s";
    for (auto s : kAllStates) h += fmt::format(",res_{}", to_string(s));
    h += ",res_transition,edp_bytes,dram_read_bytes,dram_write_bytes,reference,reduction_percent\n";
    return h;
}

std::string csv_row(const power::EnergyReport& r, std::string_view label) {
    std::string row = fmt::format("{},{},{},{},{},{},{},{},{},{}", label, r.scheme, r.calibration, r.windows,
                                  format_number(r.simulated_seconds), format_number(r.average_power_mw),
                                  format_number(r.per_second.total_j), format_number(r.per_second.dram_j),
                                  format_number(r.per_second.display_j), format_number(r.per_second.others_j));
    for (auto s : kAllStates) row += "," + format_number(r.residencies[s]);
    row += fmt::format(",{},{},{},{}", format_number(r.residencies.transition_fraction), r.edp_bytes,
                       r.traffic.total_read(), r.traffic.total_write());
    if (r.reduction)
        row += fmt::format(",{},{}\n", r.reduction->reference_scheme, format_number(r.reduction->percent));
    else
        row += ",,\n";
    return row;
}

std::string csv_preamble(const RunManifest& m) {
    std::string out;
    out += fmt::format("# command: {}\n", m.command);
    for (const auto& c : m.config_paths) out += fmt::format("# config: {}\n", c);
    out += fmt::format("# calibration: {}\n", m.calibration);
    if (m.seed) out += fmt::format("# seed: {}\n", *m.seed);
    out += fmt::format("# tool_version: {}\n", m.tool_version);
    return out;
}

} // namespace report
} // namespace burstlink
