#include "xlog/flow.hpp"

#include <algorithm>
#include <string>

#include "xlog/errors.hpp"

namespace xlog {

void FlowConfig::validate() const {
    auto check = [](std::uint64_t v, const char* name) {
        if (v == 0) {
            throw ConfigError(std::string(name) + " must be strictly positive");
        }
    };
    check(s_p, "s_p");
    check(s_r, "s_r");
    check(t_p_ms, "t_p");
    check(t_r_ms, "t_r");
    check(n_cores, "n_cores");
}

bool FlowConfig::feasible() const {
    validate();
    return s_r >= required_ring_size(n_cores, s_p, t_p_ms, t_r_ms);
}

std::uint64_t required_ring_size(std::uint32_t n, std::uint64_t s_p, std::uint64_t t_p_ms,
                                 std::uint64_t t_r_ms) {
    if (n == 0 || s_p == 0 || t_p_ms == 0 || t_r_ms == 0) {
        throw ConfigError("required_ring_size needs strictly positive inputs");
    }
    // ceil(t_r * n * s_p / t_p)
    std::uint64_t numerator = t_r_ms * n * s_p;
    return (numerator + t_p_ms - 1) / t_p_ms;
}

namespace {

struct SimState {
    const FlowConfig& cfg;
    std::vector<std::uint64_t> buf;
    std::uint64_t ring = 0;
    LossReport rep;

    explicit SimState(const FlowConfig& c) : cfg(c), buf(c.n_cores, 0) {}

    void flush() {
        for (auto& b : buf) {
            if (b == 0) continue;
            std::uint64_t space = cfg.s_r - ring;
            std::uint64_t moved = std::min(b, space);
            ring += moved;
            rep.dropped_ring += b - moved;
            rep.flushes += 1;
            b = 0;
        }
    }

    void drain() {
        if (ring == 0) return;
        rep.delivered += ring;
        ring = 0;
        rep.flushes += 1;
    }

    void arrive(const FlowArrival& a) {
        if (a.core >= cfg.n_cores) {
            throw StructError("arrival on core " + std::to_string(a.core) + " but only " +
                              std::to_string(cfg.n_cores) + " cores are configured");
        }
        rep.d_total += a.bytes;
        std::uint64_t space = cfg.s_p - buf[a.core];
        std::uint64_t accepted = std::min(a.bytes, space);
        buf[a.core] += accepted;
        rep.dropped_core += a.bytes - accepted;
    }
};

}  // namespace

LossReport simulate(const FlowConfig& config, std::span<const FlowArrival> trace) {
    config.validate();

    SimState sim(config);
    std::uint64_t next_flush = config.t_p_ms;
    std::uint64_t next_drain = config.t_r_ms;

    std::uint64_t prev_time = 0;
    for (const FlowArrival& a : trace) {
        if (a.time_ms < prev_time) {
            throw InputError("trace is not sorted by time (saw " + std::to_string(a.time_ms) +
                             " after " + std::to_string(prev_time) + ")");
        }
        prev_time = a.time_ms;

        // Boundaries at or before this arrival fire first; a coincident
        // flush precedes a coincident drain.
        while (std::min(next_flush, next_drain) <= a.time_ms) {
            std::uint64_t t = std::min(next_flush, next_drain);
            if (next_flush == t) {
                sim.flush();
                next_flush += config.t_p_ms;
            }
            if (next_drain == t) {
                sim.drain();
                next_drain += config.t_r_ms;
            }
        }
        sim.arrive(a);
    }

    sim.flush();
    sim.drain();
    return sim.rep;
}

std::vector<SweepRow> sweep(std::span<const FlowConfig> grid,
                            std::span<const FlowArrival> trace) {
    if (grid.empty()) {
        throw ConfigError("sweep needs a nonempty grid");
    }
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const FlowConfig& cfg : grid) {
        LossReport rep = simulate(cfg, trace);
        rows.push_back({cfg, rep.p_loss(), rep.flushes});
    }
    return rows;
}

std::vector<FlowConfig> reference_grid(std::uint32_t n_cores) {
    if (n_cores == 0) {
        throw ConfigError("reference_grid needs at least one core");
    }
    std::vector<FlowConfig> grid;
    grid.reserve(1764);
    for (std::uint64_t sp = 512; sp <= 32 * 1024; sp *= 2) {
        for (std::uint64_t sr = 1024 * 1024; sr <= 64 * 1024 * 1024; sr *= 2) {
            for (std::uint64_t tp = 5; tp <= 255; tp += 50) {
                for (std::uint64_t tr = 500; tr <= 3000; tr += 500) {
                    grid.push_back({sp, sr, tp, tr, n_cores});
                }
            }
        }
    }
    return grid;
}

}  // namespace xlog
