#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xlog {

// The two-level buffering knobs: per-core buffer size and flush interval,
// ring size and drain interval, plus the core count.
struct FlowConfig {
    std::uint64_t s_p = 32 * 1024;
    std::uint64_t s_r = 64 * 1024 * 1024;
    std::uint64_t t_p_ms = 200;
    std::uint64_t t_r_ms = 1000;
    std::uint32_t n_cores = 8;

    void validate() const;  // all fields strictly positive
    bool feasible() const;  // s_r large enough for loss-free steady state
};

// Smallest ring that absorbs every per-core flush between two drains when
// all buffers fill: ceil(t_r * n * s_p / t_p).
std::uint64_t required_ring_size(std::uint32_t n, std::uint64_t s_p, std::uint64_t t_p_ms,
                                 std::uint64_t t_r_ms);

struct FlowArrival {
    std::uint64_t time_ms = 0;
    std::uint32_t core = 0;
    std::uint64_t bytes = 0;
};

struct LossReport {
    std::uint64_t d_total = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_core = 0;  // per-core buffer overflow
    std::uint64_t dropped_ring = 0;  // ring overflow at flush time
    std::uint64_t flushes = 0;       // nonempty transfers at either level

    std::uint64_t d_discarded() const { return dropped_core + dropped_ring; }
    double p_loss() const {
        return d_total == 0 ? 0.0 : static_cast<double>(d_discarded()) /
                                        static_cast<double>(d_total);
    }
};

// Deterministic virtual-clock replay. Ticks are aligned at multiples of
// t_p / t_r; at one timestamp the order is flush, then drain, then arrivals
// (an arrival exactly on a boundary belongs to the next window). Per-core
// overflow drops the arriving excess; flush always empties a buffer, with
// the ring's overflow dropped; drains empty the ring. A final flush+drain
// closes the run so delivered + dropped == generated.
// The trace must be sorted by time (input error otherwise).
LossReport simulate(const FlowConfig& config, std::span<const FlowArrival> trace);

struct SweepRow {
    FlowConfig config;
    double p_loss = 0.0;
    std::uint64_t flushes = 0;
};

std::vector<SweepRow> sweep(std::span<const FlowConfig> grid,
                            std::span<const FlowArrival> trace);

// The published design-space study: s_p in {0.5..32} KB (x2 steps), s_r in
// {1..64} MB (x2 steps), t_p in {5..255} ms (+50 steps), t_r in {500..3000}
// ms (+500 steps) = 7*7*6*6 = 1764 configurations.
std::vector<FlowConfig> reference_grid(std::uint32_t n_cores);

}  // namespace xlog
