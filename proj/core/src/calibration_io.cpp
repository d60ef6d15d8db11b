#include "burstlink/calibration_io.hpp"

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace burstlink::cstates {

using nlohmann::json;
using detail::check_keys;
using detail::get;
using detail::get_to;

namespace {

json transition_json(const TransitionSpec& t) {
    return json{{"entry_latency_ns", t.entry_latency.count()},
                {"entry_power_mw", t.entry_power_mw},
                {"exit_latency_ns", t.exit_latency.count()},
                {"exit_power_mw", t.exit_power_mw}};
}

TransitionSpec transition_from(const json& j, std::string_view where,
                               std::initializer_list<std::string_view> extra = {}) {
    std::vector<std::string_view> keys{"entry_latency_ns", "entry_power_mw", "exit_latency_ns",
                                       "exit_power_mw"};
    keys.insert(keys.end(), extra.begin(), extra.end());
    detail::expect_object(j, where);
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto k : keys) known = known || k == key;
        if (!known) throw Error(ErrorCode::input, std::string(where) + ": unknown key '" + key + "'");
    }
    TransitionSpec t;
    t.entry_latency = Duration{get<std::int64_t>(j, where, "entry_latency_ns")};
    t.entry_power_mw = get<double>(j, where, "entry_power_mw");
    t.exit_latency = Duration{get<std::int64_t>(j, where, "exit_latency_ns")};
    t.exit_power_mw = get<double>(j, where, "exit_power_mw");
    return t;
}

PackageCState state_from(const std::string& name, std::string_view where) {
    const auto s = parse_state(name);
    if (!s) throw Error(ErrorCode::input, std::string(where) + ": unknown state '" + name + "'");
    return *s;
}

} // namespace

json to_json(const PowerProfile& p) {
    json states = json::object();
    for (const auto& [s, sp] : p.states)
        states[std::string(to_string(s))] = {{"total_mw", sp.total_mw},
                                             {"dram_background_mw", sp.split.dram_background_mw},
                                             {"display_mw", sp.split.display_mw},
                                             {"others_mw", sp.split.others_mw}};
    json transitions = json::array();
    for (const auto& [pair, t] : p.transitions) {
        json row = transition_json(t);
        row["from"] = std::string(to_string(pair.first));
        row["to"] = std::string(to_string(pair.second));
        transitions.push_back(std::move(row));
    }
    return json{{"states", std::move(states)},
                {"transitions", std::move(transitions)},
                {"default_transition", transition_json(p.default_transition)},
                {"drfb_active_power_adder_mw", p.drfb_active_power_adder_mw},
                {"vd_dynamic_power_mw", p.vd_dynamic_power_mw},
                {"fbc_compute_power_mw", p.fbc_compute_power_mw},
                {"gpu_pipelined_power_mw", p.gpu_pipelined_power_mw}};
}

PowerProfile profile_from_json(const json& j, std::string name) {
    const std::string where = "profiles." + name;
    check_keys(j, where,
               {"states", "transitions", "default_transition", "drfb_active_power_adder_mw",
                "vd_dynamic_power_mw", "fbc_compute_power_mw", "gpu_pipelined_power_mw"});
    PowerProfile p;
    p.name = std::move(name);
    const auto& states = j.at("states");
    detail::expect_object(states, where + ".states");
    for (const auto& [key, value] : states.items()) {
        const std::string sw = where + ".states." + key;
        check_keys(value, sw, {"total_mw", "dram_background_mw", "display_mw", "others_mw"});
        StatePower sp;
        sp.total_mw = get<double>(value, sw, "total_mw");
        sp.split.dram_background_mw = get<double>(value, sw, "dram_background_mw");
        sp.split.display_mw = get<double>(value, sw, "display_mw");
        sp.split.others_mw = get<double>(value, sw, "others_mw");
        p.states[state_from(key, sw)] = sp;
    }
    if (j.contains("transitions")) {
        const auto& list = j.at("transitions");
        if (!list.is_array())
            throw Error(ErrorCode::input, where + ".transitions: expected an array");
        for (const auto& row : list) {
            const std::string tw = where + ".transitions[]";
            const auto t = transition_from(row, tw, {"from", "to"});
            p.transitions[{state_from(get<std::string>(row, tw, "from"), tw),
                           state_from(get<std::string>(row, tw, "to"), tw)}] = t;
        }
    }
    if (j.contains("default_transition"))
        p.default_transition = transition_from(j.at("default_transition"), where + ".default_transition");
    get_to(j, where, "drfb_active_power_adder_mw", p.drfb_active_power_adder_mw);
    get_to(j, where, "vd_dynamic_power_mw", p.vd_dynamic_power_mw);
    get_to(j, where, "fbc_compute_power_mw", p.fbc_compute_power_mw);
    get_to(j, where, "gpu_pipelined_power_mw", p.gpu_pipelined_power_mw);
    check_profile(p);
    return p;
}

json to_json(const model::SystemConfig& s) {
    json bg = json::object();
    for (auto d : kAllDramStates) bg[std::string(to_string(d))] = s.dram.background_mw[index(d)];
    return json{{"dc_buffer_bytes", s.dc_buffer_bytes},
                {"dram_fetch_bandwidth", s.dram_fetch_bandwidth},
                {"decode_rate", s.decode_rate},
                {"stream_decode_rate", s.stream_decode_rate},
                {"gpu_pt_rate", s.gpu_pt_rate},
                {"orchestration_time_ns", s.orchestration_time.count()},
                {"bypass_orchestration_time_ns", s.bypass_orchestration_time.count()},
                {"repeat_orchestration_time_ns", s.repeat_orchestration_time.count()},
                {"encoded_ratio", s.encoded_ratio},
                {"dram_capacity_bytes", s.dram_capacity_bytes},
                {"dram",
                 {{"coeff_read_j_per_byte", s.dram.coeff_read},
                  {"coeff_write_j_per_byte", s.dram.coeff_write},
                  {"background_mw", std::move(bg)}}}};
}

model::SystemConfig system_from_json(const json& j, model::SystemConfig s) {
    constexpr std::string_view where = "system";
    check_keys(j, where,
               {"dc_buffer_bytes", "dram_fetch_bandwidth", "decode_rate", "stream_decode_rate",
                "gpu_pt_rate", "orchestration_time_ns", "bypass_orchestration_time_ns",
                "repeat_orchestration_time_ns",
                "encoded_ratio", "dram_capacity_bytes", "dram"});
    get_to(j, where, "dc_buffer_bytes", s.dc_buffer_bytes);
    get_to(j, where, "dram_fetch_bandwidth", s.dram_fetch_bandwidth);
    get_to(j, where, "decode_rate", s.decode_rate);
    get_to(j, where, "stream_decode_rate", s.stream_decode_rate);
    get_to(j, where, "gpu_pt_rate", s.gpu_pt_rate);
    if (j.contains("orchestration_time_ns"))
        s.orchestration_time = Duration{get<std::int64_t>(j, where, "orchestration_time_ns")};
    if (j.contains("bypass_orchestration_time_ns"))
        s.bypass_orchestration_time =
            Duration{get<std::int64_t>(j, where, "bypass_orchestration_time_ns")};
    if (j.contains("repeat_orchestration_time_ns"))
        s.repeat_orchestration_time =
            Duration{get<std::int64_t>(j, where, "repeat_orchestration_time_ns")};
    get_to(j, where, "encoded_ratio", s.encoded_ratio);
    get_to(j, where, "dram_capacity_bytes", s.dram_capacity_bytes);
    if (j.contains("dram")) {
        const auto& d = j.at("dram");
        check_keys(d, "system.dram", {"coeff_read_j_per_byte", "coeff_write_j_per_byte", "background_mw"});
        get_to(d, "system.dram", "coeff_read_j_per_byte", s.dram.coeff_read);
        get_to(d, "system.dram", "coeff_write_j_per_byte", s.dram.coeff_write);
        if (d.contains("background_mw")) {
            const auto& bg = d.at("background_mw");
            detail::expect_object(bg, "system.dram.background_mw");
            for (const auto& [key, value] : bg.items()) {
                const auto ds = parse_dram_state(key);
                if (!ds)
                    throw Error(ErrorCode::input,
                                "system.dram.background_mw: unknown DRAM state '" + key + "'");
                s.dram.background_mw[index(*ds)] = value.get<double>();
            }
        }
    }
    return s;
}

json to_json(const CalibrationSet& set) {
    json profiles = json::object();
    for (const auto& [scheme, p] : set.profiles)
        profiles[std::string(model::to_string(scheme))] = to_json(p);
    return json{{"name", set.name},
                {"description", set.description},
                {"system", to_json(set.system)},
                {"profiles", std::move(profiles)}};
}

CalibrationSet calibration_from_json(const json& j) {
    check_keys(j, "calibration", {"name", "description", "system", "profiles", "fit"});
    CalibrationSet set;
    set.name = get<std::string>(j, "calibration", "name");
    get_to(j, "calibration", "description", set.description);
    if (j.contains("system")) set.system = system_from_json(j.at("system"));
    const auto& profiles = j.at("profiles");
    detail::expect_object(profiles, "calibration.profiles");
    for (const auto& [key, value] : profiles.items()) {
        const auto scheme = model::parse_scheme(key);
        if (!scheme)
            throw Error(ErrorCode::input, "calibration.profiles: unknown scheme '" + key + "'");
        set.profiles[*scheme] = profile_from_json(value, key);
    }
    if (set.profiles.empty())
        throw Error(ErrorCode::input, "calibration.profiles: at least one profile is required");
    return set;
}

CalibrationSet parse_calibration(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::input, std::string("calibration: ") + e.what());
    }
    return calibration_from_json(j);
}

CalibrationSet load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::input, "cannot open calibration file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_calibration(ss.str());
}

void save_calibration(const CalibrationSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::input, "cannot write calibration file " + path.string());
    out << to_json(set).dump(2) << '\n';
}

} // namespace burstlink::cstates
