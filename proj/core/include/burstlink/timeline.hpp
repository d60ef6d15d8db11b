#pragma once

#include "burstlink/model.hpp"
#include "burstlink/states.hpp"
#include "burstlink/units.hpp"

#include <array>
#include <span>
#include <vector>

namespace burstlink::timeline {

enum class IntervalKind : std::uint8_t { steady, transition };

struct Interval {
    IntervalKind kind = IntervalKind::steady;
    PackageCState state = PackageCState::C0; ///< steady state; for transitions the target
    PackageCState from = PackageCState::C0;  ///< transitions only
    Duration start{0};                        ///< relative to the window start
    Duration end{0};
    Bytes encoded_read = 0; ///< encoded-frame reads
    Bytes frame_read = 0;   ///< decoded/projected frame reads (DC fetch, projection input)
    Bytes frame_write = 0;  ///< decoded/projected frame writes
    Bytes edp_bytes = 0;
    bool drfb_active = false; ///< panel receiving into its DRFB
    bool compressing = false; ///< FBC compression running alongside decode
    bool projecting = false;  ///< pipelined projection inside a streaming span

    [[nodiscard]] Duration span() const noexcept { return end - start; }
    [[nodiscard]] Bytes dram_read() const noexcept { return encoded_read + frame_read; }
    [[nodiscard]] Bytes dram_write() const noexcept { return frame_write; }
};

/// new_frame: a freshly decoded frame goes to the panel; refreshed: the same
/// frame is streamed again; repeated: the panel self-refreshes (no eDP data).
enum class DisplayedFrame : std::uint8_t { new_frame, refreshed, repeated };

[[nodiscard]] std::string_view to_string(DisplayedFrame f) noexcept;

struct TransitionEvent {
    Duration at{0}; ///< relative to the window start
    PackageCState from = PackageCState::C0;
    PackageCState to = PackageCState::C0;
};

struct WindowTimeline {
    std::uint64_t window_index = 0;
    Duration start{0}; ///< absolute start of the window
    Duration duration{0};
    std::vector<Interval> intervals;
    std::vector<TransitionEvent> transitions;
    DisplayedFrame displayed_frame = DisplayedFrame::new_frame;
    model::Scheme scheme = model::Scheme::baseline; ///< effective scheme for the window
};

/// Dispatches on workload.scheme (after the destination selector).
[[nodiscard]] std::vector<WindowTimeline> build_timelines(const model::WorkloadSpec& workload,
                                                          const model::SystemConfig& system);

[[nodiscard]] std::vector<WindowTimeline> build_baseline(const model::WorkloadSpec& workload,
                                                         const model::SystemConfig& system,
                                                         bool psr_alternate_windows);
[[nodiscard]] std::vector<WindowTimeline> build_bypass(const model::WorkloadSpec& workload,
                                                       const model::SystemConfig& system);
[[nodiscard]] std::vector<WindowTimeline> build_bursting(const model::WorkloadSpec& workload,
                                                         const model::SystemConfig& system);
[[nodiscard]] std::vector<WindowTimeline> build_burstlink(const model::WorkloadSpec& workload,
                                                          const model::SystemConfig& system);

/// Fixed-tick simulation of the component state machines. `tick` must be
/// at most 1 us.
[[nodiscard]] std::vector<WindowTimeline> oracle_simulate(const model::WorkloadSpec& workload,
                                                          const model::SystemConfig& system,
                                                          Duration tick);

struct Residencies {
    std::array<double, kStateCount> fraction{};
    double transition_fraction = 0;
    Duration total{0};

    [[nodiscard]] double operator[](PackageCState s) const noexcept { return fraction[index(s)]; }
    [[nodiscard]] double sum() const noexcept;
};

[[nodiscard]] Residencies residencies(std::span<const WindowTimeline> timelines);

/// Fills `transitions` of every window from state changes between adjacent
/// steady intervals, including across window boundaries.
void annotate_transitions(std::vector<WindowTimeline>& timelines);

/// Throws Error(consistency) if a timeline breaks coverage or ordering.
void check_coverage(const WindowTimeline& t);

} // namespace burstlink::timeline
