#pragma once

#include "burstlink/model.hpp"
#include "burstlink/timeline.hpp"

#include <vector>

namespace burstlink::timeline {

enum class ChunkSource : std::uint8_t { none, dram, decoder };

/// Work handed to one frame window. Builders and the oracle both start from
/// this description: the builders turn it into spans with closed-form rate
/// algebra, the oracle runs the component state machines over it.
struct WindowPlan {
    std::uint64_t index = 0;
    Duration start{0};
    Duration length{0};
    model::Scheme scheme = model::Scheme::baseline;
    DisplayedFrame displayed = DisplayedFrame::new_frame;
    PackageCState deepest_allowed = PackageCState::C10;

    Duration orchestration{0}; ///< cores execute from t = 0

    // Conventional path: decode (then projection) into DRAM right after
    // orchestration; the cores stay busy until both finish.
    Bytes decode_bytes = 0;
    double decode_rate = 0;
    Bytes pt_bytes = 0;
    double pt_rate = 0;
    bool compressing = false;

    // DRAM traffic attached to those stages.
    Bytes encoded_read = 0;   ///< read during decode, or during orchestration when bypassing
    Bytes decode_write = 0;
    Bytes pt_read = 0;
    Bytes pt_write = 0;

    // Display transfer.
    bool transfer = false;
    bool panel_paced = false;  ///< spans the whole window at the panel rate
    Duration transfer_start{0};
    Duration transfer_length{0}; ///< time to drain the payload at link_rate
    Bytes payload = 0;           ///< eDP bytes
    double link_rate = 0;      ///< payload bytes/s on the link
    Bytes chunk = 0;
    ChunkSource source = ChunkSource::none;
    double source_rate = 0;    ///< payload bytes/s delivered into the DC buffer
    Bytes fetch_read = 0;      ///< DRAM bytes read by the DC over the whole transfer
    bool drfb = false;
    bool pipelined_projection = false;

    [[nodiscard]] Duration transfer_end() const { return transfer_start + transfer_length; }
    [[nodiscard]] std::uint64_t chunk_count() const;
    [[nodiscard]] Bytes chunk_bytes(std::uint64_t k) const;
};

/// Per-window plans for `windows_to_simulate` windows. Validates the
/// configuration first and throws on violations.
[[nodiscard]] std::vector<WindowPlan> plan_windows(const model::WorkloadSpec& workload,
                                                   const model::SystemConfig& system);

/// Closed-form timeline of one planned window.
[[nodiscard]] WindowTimeline build_window(const WindowPlan& plan);

/// Builds every window and annotates transitions.
[[nodiscard]] std::vector<WindowTimeline> build_from_plans(const std::vector<WindowPlan>& plans);

/// Exact integer share of `total` accumulated by `t` for a flow spread
/// uniformly over [a, b).
[[nodiscard]] Bytes cumulative_share(Bytes total, Duration a, Duration b, Duration t);

} // namespace burstlink::timeline
