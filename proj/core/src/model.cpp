#include "burstlink/model.hpp"

#include "burstlink/error.hpp"
#include "burstlink/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace burstlink::model {

namespace {

void add(ValidationReport& r, std::string code, std::string message) {
    r.violations.push_back({std::move(code), std::move(message)});
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt_ms(double seconds) {
    std::ostringstream os;
    os.precision(4);
    os << seconds * 1e3 << " ms";
    return os.str();
}

} // namespace

std::optional<Resolution> parse_resolution(std::string_view text) {
    if (text == "FHD" || text == "fhd") return kFHD;
    if (text == "QHD" || text == "qhd") return kQHD;
    if (text == "4K" || text == "4k") return k4K;
    if (text == "5K" || text == "5k") return k5K;
    const auto x = text.find('x');
    if (x == std::string_view::npos) return std::nullopt;
    Resolution r{0, 0};
    const auto w = text.substr(0, x);
    const auto h = text.substr(x + 1);
    if (std::from_chars(w.data(), w.data() + w.size(), r.width).ec != std::errc{} ||
        std::from_chars(h.data(), h.data() + h.size(), r.height).ec != std::errc{})
        return std::nullopt;
    return r;
}

std::string resolution_name(Resolution r) {
    if (r == kFHD) return "FHD";
    if (r == kQHD) return "QHD";
    if (r == k4K) return "4K";
    if (r == k5K) return "5K";
    return std::to_string(r.width) + "x" + std::to_string(r.height);
}

std::string_view to_string(VideoKind k) noexcept {
    return k == VideoKind::planar ? "planar" : "vr360";
}

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
    case Scheme::baseline: return "baseline";
    case Scheme::bypass_only: return "bypass_only";
    case Scheme::bursting_only: return "bursting_only";
    case Scheme::burstlink: return "burstlink";
    }
    return "baseline";
}

std::optional<VideoKind> parse_kind(std::string_view text) noexcept {
    if (text == "planar") return VideoKind::planar;
    if (text == "vr360") return VideoKind::vr360;
    return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view text) noexcept {
    for (auto s : kAllSchemes)
        if (to_string(s) == text) return s;
    return std::nullopt;
}

Bytes frame_bytes(Resolution r, std::uint32_t bits_per_pixel) {
    if (r.width == 0 || r.height == 0)
        throw Error(ErrorCode::invalid_config, "resolution must be at least 1x1");
    if (bits_per_pixel != 16 && bits_per_pixel != 24 && bits_per_pixel != 30 &&
        bits_per_pixel != 32)
        throw Error(ErrorCode::invalid_config,
                    "unsupported bits_per_pixel " + std::to_string(bits_per_pixel));
    const Bytes bits = Bytes{r.width} * r.height * bits_per_pixel;
    if (bits % 8 != 0)
        throw Error(ErrorCode::invalid_config, "frame size is not a whole number of bytes");
    return bits / 8;
}

Duration frame_window(std::uint32_t refresh_hz) {
    if (refresh_hz == 0) throw Error(ErrorCode::invalid_config, "refresh_hz must be > 0");
    return Duration{(kNanosPerSecond + refresh_hz / 2) / refresh_hz};
}

Duration window_start(std::uint64_t i, std::uint32_t refresh_hz) {
    if (refresh_hz == 0) throw Error(ErrorCode::invalid_config, "refresh_hz must be > 0");
    const auto whole = i / refresh_hz;
    const auto part = i % refresh_hz;
    return Duration{static_cast<std::int64_t>(whole) * kNanosPerSecond +
                    static_cast<std::int64_t>(part) * kNanosPerSecond / refresh_hz};
}

Duration window_length(std::uint64_t i, std::uint32_t refresh_hz) {
    return window_start(i + 1, refresh_hz) - window_start(i, refresh_hz);
}

double panel_stream_rate(const DisplayConfig& display) {
    return static_cast<double>(frame_bytes(display.resolution, display.bits_per_pixel)) * 8.0 *
           display.refresh_hz;
}

Seconds burst_transfer_time(Resolution r, std::uint32_t bits_per_pixel, double edp_max_bandwidth) {
    if (!(edp_max_bandwidth > 0))
        throw Error(ErrorCode::invalid_config, "edp_max_bandwidth must be > 0");
    return Seconds{static_cast<double>(frame_bytes(r, bits_per_pixel)) * 8.0 / edp_max_bandwidth};
}

std::uint32_t repeat_ratio(const WorkloadSpec& w) {
    if (w.video_fps == 0 || w.display.refresh_hz % w.video_fps != 0)
        throw Error(ErrorCode::invalid_config, "repeat ratio not integral");
    return w.display.refresh_hz / w.video_fps;
}

bool ValidationReport::has(std::string_view code) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate_config(const WorkloadSpec& workload, const SystemConfig& system) {
    ValidationReport r;
    const auto& d = workload.display;
    const auto& o = workload.overlay;

    if (d.resolution.width == 0 || d.resolution.height == 0)
        add(r, "resolution.invalid", "width and height must be >= 1");
    if (d.refresh_hz == 0) add(r, "refresh.zero", "refresh_hz must be > 0");
    const bool bpp_ok = d.bits_per_pixel == 16 || d.bits_per_pixel == 24 ||
                        d.bits_per_pixel == 30 || d.bits_per_pixel == 32;
    if (!bpp_ok) add(r, "bpp.unsupported", "bits_per_pixel must be one of 16, 24, 30, 32");
    if (!positive_finite(d.edp_max_bandwidth))
        add(r, "edp.bandwidth", "edp_max_bandwidth must be > 0");
    if (d.drfb_present && !d.panel_psr_capable)
        add(r, "display.drfb_requires_psr", "a DRFB panel must be PSR capable");

    if (workload.video_fps == 0) {
        add(r, "fps.zero", "video_fps must be > 0");
    } else if (d.refresh_hz != 0) {
        if (workload.video_fps > d.refresh_hz)
            add(r, "fps.exceeds_refresh", "video_fps exceeds refresh_hz");
        else if (d.refresh_hz % workload.video_fps != 0)
            add(r, "fps.repeat_ratio", "repeat ratio not integral");
    }
    if (workload.windows_to_simulate == 0)
        add(r, "windows.zero", "windows_to_simulate must be > 0");

    if (system.dc_buffer_bytes == 0) add(r, "system.dc_buffer", "dc_buffer_bytes must be > 0");
    if (!positive_finite(system.dram_fetch_bandwidth))
        add(r, "system.dram_fetch_bandwidth", "dram_fetch_bandwidth must be > 0");
    if (!positive_finite(system.decode_rate))
        add(r, "system.decode_rate", "decode_rate must be > 0");
    if (!positive_finite(system.stream_decode_rate))
        add(r, "system.stream_decode_rate", "stream_decode_rate must be > 0");
    if (!positive_finite(system.gpu_pt_rate))
        add(r, "system.gpu_pt_rate", "gpu_pt_rate must be > 0");
    if (system.orchestration_time.count() <= 0)
        add(r, "system.orchestration_time", "orchestration_time must be > 0");
    if (system.bypass_orchestration_time.count() <= 0)
        add(r, "system.bypass_orchestration_time", "bypass_orchestration_time must be > 0");
    if (system.repeat_orchestration_time.count() < 0)
        add(r, "system.repeat_orchestration_time", "repeat_orchestration_time must be >= 0");
    if (!(system.encoded_ratio > 0 && system.encoded_ratio <= 1))
        add(r, "system.encoded_ratio", "encoded_ratio must be in (0, 1]");
    if (system.dram_capacity_bytes == 0)
        add(r, "system.dram_capacity", "dram_capacity_bytes must be > 0");
    if (system.dram.coeff_read < 0 || system.dram.coeff_write < 0)
        add(r, "system.dram_coeff", "DRAM coefficients must be >= 0");
    for (double p : system.dram.background_mw)
        if (!(p >= 0)) add(r, "system.dram_background", "DRAM background power must be >= 0");
    if (system.dc_buffer_bytes > frame_bytes(kFHD, 16))
        add(r, "system.dc_buffer_exceeds_frame",
            "dc_buffer_bytes exceeds the smallest supported frame");

    if (!(o.fbc_ratio > 0 && o.fbc_ratio <= 1))
        add(r, "overlay.fbc_ratio", "fbc_ratio must be in (0, 1]");
    if (o.batch_frames == 0) add(r, "overlay.batch_frames", "batch_frames must be >= 1");
    if (!(o.batch_cached_fraction >= 0 && o.batch_cached_fraction < 1))
        add(r, "overlay.batch_cached_fraction", "batch_cached_fraction must be in [0, 1)");
    if (!(o.batch_decode_boost >= 1))
        add(r, "overlay.batch_decode_boost", "batch_decode_boost must be >= 1");
    if (o.windowed) {
        if (!(o.windowed->dirty_fraction >= 0 && o.windowed->dirty_fraction <= 1))
            add(r, "overlay.dirty_fraction", "dirty_fraction must be in [0, 1]");
        if (!d.panel_psr2_capable)
            add(r, "overlay.psr2_unsupported", "selective update needs a PSR2 panel");
    }
    if (o.deepest_allowed == PackageCState::C0)
        add(r, "overlay.deepest_allowed", "deepest_allowed must be at least C2");

    if (model::bursts(workload.scheme) || workload.scheme == Scheme::bypass_only) {
        if (!d.drfb_present)
            add(r, "scheme.requires_drfb",
                std::string(to_string(workload.scheme)) + " needs a DRFB panel");
    }

    if (!r.ok()) return r;

    // Feasibility of the per-window schedule.
    const Bytes frame = frame_bytes(d.resolution, d.bits_per_pixel);
    if (system.dc_buffer_bytes > frame)
        add(r, "system.dc_buffer_exceeds_frame", "dc_buffer_bytes exceeds the frame size");
    const double window = 1.0 / d.refresh_hz;
    const double panel_bytes = static_cast<double>(frame) * d.refresh_hz;
    const double scale = o.fbc_ratio * (o.batch_frames > 1 ? 1.0 - o.batch_cached_fraction : 1.0);
    const bool vr = workload.kind == VideoKind::vr360;
    const double t_orch = to_seconds(system.orchestration_time);
    const double t_orch_bp = to_seconds(system.bypass_orchestration_time);
    const double t_dec = static_cast<double>(frame) / system.decode_rate;
    const double t_pt = vr ? static_cast<double>(frame) / system.gpu_pt_rate : 0.0;
    const double stream_rate =
        vr ? std::min(system.stream_decode_rate, system.gpu_pt_rate) : system.stream_decode_rate;
    const double link = d.edp_max_bandwidth / 8.0;
    const double eps = 1e-12;

    const auto check = [&](Scheme scheme) {
        if (!bypasses_dram(scheme)) {
            const double batch = o.batch_frames;
            const double c0 = t_orch + batch * (t_dec / o.batch_decode_boost + t_pt);
            if (c0 > window + eps)
                add(r, "decode.exceeds_window",
                    "orchestration + decode takes " + fmt_ms(c0) + ", window is " + fmt_ms(window));
            if (Bytes{o.batch_frames} * frame > system.dram_capacity_bytes)
                add(r, "overlay.batch_capacity", "DRAM cannot hold batch_frames decoded frames");
            if (scheme == Scheme::baseline) {
                if (system.dram_fetch_bandwidth < panel_bytes * scale)
                    add(r, "fetch.slower_than_panel", "DRAM fetch cannot keep up with the panel");
            } else {
                const double rate = std::min(link, system.dram_fetch_bandwidth / scale);
                const double span = static_cast<double>(frame) / rate;
                if (span > window + eps)
                    add(r, "burst.exceeds_window",
                        "burst takes " + fmt_ms(span) + ", window is " + fmt_ms(window));
            }
            return;
        }
        if (t_orch_bp > window + eps ||
            to_seconds(system.repeat_orchestration_time) > window + eps)
            add(r, "orchestration.exceeds_window", "orchestration exceeds the window");
        if (scheme == Scheme::bypass_only) {
            if (stream_rate < panel_bytes)
                add(r, "decode.slower_than_panel", "streaming decode cannot keep up with the panel");
        } else {
            const double rate = std::min(link, stream_rate);
            const double span = t_orch_bp + static_cast<double>(frame) / rate;
            if (span > window + eps)
                add(r, "burst.exceeds_window",
                    "orchestration + burst takes " + fmt_ms(span) + ", window is " + fmt_ms(window));
        }
    };

    const Scheme effective = scenarios::select_scheme(o.planes, workload.scheme, d);
    check(effective);
    if (effective != Scheme::baseline && o.windowed && o.windowed->stage1_windows > 0)
        check(Scheme::baseline);
    return r;
}

void require_valid(const WorkloadSpec& workload, const SystemConfig& system) {
    const auto report = validate_config(workload, system);
    if (report.ok()) return;
    const auto& v = report.violations.front();
    ErrorCode code = ErrorCode::invalid_config;
    if (v.code.find("exceeds_window") != std::string::npos ||
        v.code.find("slower_than_panel") != std::string::npos || v.code == "overlay.batch_capacity")
        code = ErrorCode::infeasible_config;
    else if (v.code == "scheme.requires_drfb" || v.code == "overlay.psr2_unsupported")
        code = ErrorCode::unsupported_scheme;
    throw Error(code, v.code + ": " + v.message);
}

} // namespace burstlink::model
