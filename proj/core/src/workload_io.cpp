#include "burstlink/workload_io.hpp"

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace burstlink::model {

using nlohmann::json;
using detail::check_keys;
using detail::get;
using detail::get_to;

namespace {

template <class T, class Parse>
T parse_enum(const json& j, std::string_view where, const char* key, Parse parse) {
    const auto text = get<std::string>(j, where, key);
    const auto v = parse(text);
    if (!v) throw Error(ErrorCode::input, std::string(where) + "." + key + ": unknown value '" + text + "'");
    return *v;
}

Resolution resolution_from(const json& j, std::string_view where) {
    if (j.is_string()) {
        const auto r = parse_resolution(j.get<std::string>());
        if (!r) throw Error(ErrorCode::input, std::string(where) + ": unknown resolution '" + j.get<std::string>() + "'");
        return *r;
    }
    check_keys(j, where, {"width", "height"});
    return Resolution{get<std::uint32_t>(j, where, "width"), get<std::uint32_t>(j, where, "height")};
}

DisplayConfig display_from(const json& j, DisplayConfig d) {
    constexpr std::string_view where = "workload.display";
    check_keys(j, where,
               {"resolution", "refresh_hz", "bits_per_pixel", "edp_max_bandwidth", "panel_psr_capable",
                "panel_psr2_capable", "drfb_present"});
    if (j.contains("resolution")) d.resolution = resolution_from(j.at("resolution"), "workload.display.resolution");
    get_to(j, where, "refresh_hz", d.refresh_hz);
    get_to(j, where, "bits_per_pixel", d.bits_per_pixel);
    get_to(j, where, "edp_max_bandwidth", d.edp_max_bandwidth);
    get_to(j, where, "panel_psr_capable", d.panel_psr_capable);
    get_to(j, where, "panel_psr2_capable", d.panel_psr2_capable);
    get_to(j, where, "drfb_present", d.drfb_present);
    return d;
}

ScenarioOverlay overlay_from(const json& j, ScenarioOverlay o) {
    constexpr std::string_view where = "workload.overlay";
    check_keys(j, where,
               {"fbc_ratio", "batch_frames", "batch_cached_fraction", "batch_decode_boost", "windowed",
                "planes", "deepest_allowed"});
    get_to(j, where, "fbc_ratio", o.fbc_ratio);
    get_to(j, where, "batch_frames", o.batch_frames);
    get_to(j, where, "batch_cached_fraction", o.batch_cached_fraction);
    get_to(j, where, "batch_decode_boost", o.batch_decode_boost);
    if (j.contains("windowed")) {
        const auto& wj = j.at("windowed");
        if (wj.is_null()) {
            o.windowed.reset();
        } else {
            constexpr std::string_view ww = "workload.overlay.windowed";
            check_keys(wj, ww, {"dirty_fraction", "stage1_windows", "header_bytes"});
            WindowedVideo wv = o.windowed.value_or(WindowedVideo{});
            get_to(wj, ww, "dirty_fraction", wv.dirty_fraction);
            get_to(wj, ww, "stage1_windows", wv.stage1_windows);
            get_to(wj, ww, "header_bytes", wv.header_bytes);
            o.windowed = wv;
        }
    }
    if (j.contains("planes")) {
        const auto& pj = j.at("planes");
        constexpr std::string_view pw = "workload.overlay.planes";
        check_keys(pj, pw,
                   {"video_plane_only", "single_video", "graphics_interrupt", "user_input_interrupt",
                    "multiple_displays"});
        get_to(pj, pw, "video_plane_only", o.planes.video_plane_only);
        get_to(pj, pw, "single_video", o.planes.single_video);
        get_to(pj, pw, "graphics_interrupt", o.planes.graphics_interrupt);
        get_to(pj, pw, "user_input_interrupt", o.planes.user_input_interrupt);
        get_to(pj, pw, "multiple_displays", o.planes.multiple_displays);
    }
    if (j.contains("deepest_allowed"))
        o.deepest_allowed = parse_enum<PackageCState>(j, where, "deepest_allowed",
                                                      [](std::string_view s) { return parse_state(s); });
    return o;
}

} // namespace

WorkloadSpec workload_from_json(const json& j, WorkloadSpec w) {
    constexpr std::string_view where = "workload";
    check_keys(j, where,
               {"kind", "video_fps", "display", "scheme", "overlay", "windows_to_simulate",
                "psr_alternate_windows"});
    if (j.contains("kind"))
        w.kind = parse_enum<VideoKind>(j, where, "kind", [](std::string_view s) { return parse_kind(s); });
    get_to(j, where, "video_fps", w.video_fps);
    if (j.contains("display")) w.display = display_from(j.at("display"), w.display);
    if (j.contains("scheme"))
        w.scheme = parse_enum<Scheme>(j, where, "scheme", [](std::string_view s) { return parse_scheme(s); });
    if (j.contains("overlay")) w.overlay = overlay_from(j.at("overlay"), w.overlay);
    get_to(j, where, "windows_to_simulate", w.windows_to_simulate);
    get_to(j, where, "psr_alternate_windows", w.psr_alternate_windows);
    return w;
}

json to_json(const DisplayConfig& d) {
    return json{{"resolution", resolution_name(d.resolution)},
                {"refresh_hz", d.refresh_hz},
                {"bits_per_pixel", d.bits_per_pixel},
                {"edp_max_bandwidth", d.edp_max_bandwidth},
                {"panel_psr_capable", d.panel_psr_capable},
                {"panel_psr2_capable", d.panel_psr2_capable},
                {"drfb_present", d.drfb_present}};
}

json to_json(const ScenarioOverlay& o) {
    json j{{"fbc_ratio", o.fbc_ratio},
           {"batch_frames", o.batch_frames},
           {"batch_cached_fraction", o.batch_cached_fraction},
           {"batch_decode_boost", o.batch_decode_boost},
           {"planes",
            {{"video_plane_only", o.planes.video_plane_only},
             {"single_video", o.planes.single_video},
             {"graphics_interrupt", o.planes.graphics_interrupt},
             {"user_input_interrupt", o.planes.user_input_interrupt},
             {"multiple_displays", o.planes.multiple_displays}}},
           {"deepest_allowed", std::string(to_string(o.deepest_allowed))}};
    if (o.windowed)
        j["windowed"] = {{"dirty_fraction", o.windowed->dirty_fraction},
                         {"stage1_windows", o.windowed->stage1_windows},
                         {"header_bytes", o.windowed->header_bytes}};
    return j;
}

json to_json(const WorkloadSpec& w) {
    return json{{"kind", std::string(to_string(w.kind))},
                {"video_fps", w.video_fps},
                {"display", to_json(w.display)},
                {"scheme", std::string(to_string(w.scheme))},
                {"overlay", to_json(w.overlay)},
                {"windows_to_simulate", w.windows_to_simulate},
                {"psr_alternate_windows", w.psr_alternate_windows}};
}

RunConfig run_config_from_json(const json& j, const std::filesystem::path& base_dir) {
    check_keys(j, "config", {"workload", "system", "calibration", "reference"});
    if (!j.contains("workload")) throw Error(ErrorCode::input, "config: missing key 'workload'");
    RunConfig c;
    c.workload = workload_from_json(j.at("workload"));
    if (j.contains("system")) {
        detail::expect_object(j.at("system"), "config.system");
        c.system = j.at("system");
    }
    if (j.contains("calibration")) {
        std::filesystem::path p = get<std::string>(j, "config", "calibration");
        c.calibration = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (j.contains("reference")) {
        if (j.at("reference").is_null())
            c.reference.reset();
        else
            c.reference = parse_enum<Scheme>(j, "config", "reference",
                                             [](std::string_view s) { return parse_scheme(s); });
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::input, "cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::input, path.string() + ": " + e.what());
    }
    return run_config_from_json(j, path.parent_path());
}

} // namespace burstlink::model
