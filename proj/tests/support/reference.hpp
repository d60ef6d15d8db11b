#pragma once

// Test-side reference values and helpers. Nothing here calls into the
// library's arithmetic: values are recomputed from first principles so the
// tests do not simply check the implementation against itself.

#include "burstlink/model.hpp"
#include "burstlink/states.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace ref {

using burstlink::PackageCState;
namespace model = burstlink::model;

inline constexpr std::uint64_t pixels(std::uint64_t w, std::uint64_t h) { return w * h; }

/// Bytes of one uncompressed frame.
inline constexpr std::uint64_t frame_bytes(std::uint64_t w, std::uint64_t h, std::uint64_t bpp) {
    return pixels(w, h) * bpp / 8;
}

/// Seconds to move `bytes` over a link of `bits_per_second`.
inline double link_seconds(std::uint64_t bytes, double bits_per_second) {
    return static_cast<double>(bytes) * 8.0 / bits_per_second;
}

/// Reference rows: state power in mW and residency in percent.
struct Row {
    std::map<PackageCState, double> power_mw;
    std::map<PackageCState, double> residency_percent;
    double avg_power_mw;
};

inline Row table2_baseline() {
    using enum PackageCState;
    return {{{C0, 5940}, {C2, 5445}, {C7, 1385}, {C8, 1285}, {C9, 1090}},
            {{C0, 9}, {C2, 11}, {C8, 80}},
            2162};
}

inline Row table2_burstlink() {
    using enum PackageCState;
    return {{{C0, 6090}, {C2, 5740}, {C7, 1530}, {C8, 1435}, {C9, 1090}},
            {{C0, 2}, {C7, 19}, {C9, 79}},
            1274};
}

/// Hand evaluation of sum P_i * R_i.
inline double weighted_power(const Row& r) {
    double p = 0;
    for (const auto& [s, pct] : r.residency_percent) p += r.power_mw.at(s) * pct / 100.0;
    return p;
}

/// Random workload generator for the property suite. Draws are not filtered
/// here; callers keep the ones that pass validate_config.
class WorkloadSampler {
public:
    explicit WorkloadSampler(std::uint64_t seed) : rng_(seed) {}

    model::WorkloadSpec next() {
        model::WorkloadSpec w;
        static constexpr model::Resolution named[] = {model::kFHD, model::kQHD, model::k4K, model::k5K};
        if (coin(0.7)) {
            w.display.resolution = named[pick(4)];
        } else {
            // Arbitrary sizes, width and height even so every bpp gives whole bytes.
            w.display.resolution = {2 * static_cast<std::uint32_t>(uniform(640, 2560)),
                                    2 * static_cast<std::uint32_t>(uniform(360, 1440))};
        }
        static constexpr std::uint32_t bpps[] = {16, 24, 24, 30, 32};
        w.display.bits_per_pixel = bpps[pick(5)];
        static constexpr std::uint32_t refresh[] = {30, 60, 60, 90, 120};
        w.display.refresh_hz = refresh[pick(5)];
        std::vector<std::uint32_t> fps;
        for (std::uint32_t f : {15u, 24u, 30u, 45u, 60u, 90u, 120u})
            if (w.display.refresh_hz % f == 0) fps.push_back(f);
        w.video_fps = fps[pick(fps.size())];
        w.scheme = model::kAllSchemes[pick(4)];
        w.kind = coin(0.25) ? model::VideoKind::vr360 : model::VideoKind::planar;
        w.windows_to_simulate = static_cast<std::uint32_t>(uniform(1, 8));
        w.psr_alternate_windows = coin(0.3);

        auto& o = w.overlay;
        if (coin(0.3)) o.fbc_ratio = std::uniform_real_distribution<double>(0.3, 1.0)(rng_);
        if (coin(0.2)) o.batch_frames = static_cast<std::uint32_t>(uniform(2, 4));
        if (coin(0.15)) {
            model::WindowedVideo v;
            v.dirty_fraction = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
            v.stage1_windows = static_cast<std::uint32_t>(uniform(0, 3));
            o.windowed = v;
        }
        if (coin(0.1)) o.planes.graphics_interrupt = true;
        if (coin(0.05)) o.planes.multiple_displays = true;
        return w;
    }

private:
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::int64_t uniform(std::int64_t a, std::int64_t b) {
        return std::uniform_int_distribution<std::int64_t>(a, b)(rng_);
    }

    std::mt19937_64 rng_;
};

} // namespace ref
