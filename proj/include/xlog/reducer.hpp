#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <unordered_map>
#include <utility>

#include "xlog/encoder.hpp"

namespace xlog {

inline constexpr std::size_t kDefaultReducerCapacity = 65536;

// Identity of an event for deduplication: who did what with which
// arguments. Distinct timestamps do not change the key.
struct ReductionKey {
    std::uint32_t pid = 0;
    std::uint32_t syscall_id = 0;
    std::uint64_t args_digest = 0;

    friend bool operator==(const ReductionKey&, const ReductionKey&) = default;
};

struct ReductionKeyHash {
    std::size_t operator()(const ReductionKey& k) const;
};

// Digest over the fixed argument values and the variable bytes, keyed with
// a fixed public constant: dedup is a throughput feature, not a security
// boundary, so the key secrecy of the signing path is not needed here.
ReductionKey reduction_key(const AuditEvent& event);

// min(1, 2*(t1 - t0) + 0.001), seconds. Requires t1 >= t0.
double reduction_window(double t0, double t1);

enum class WindowMode {
    fixed,    // window is always 1 s
    dynamic,  // window recomputed per repeat from the key's last-kept gap
};

struct ReducerStats {
    std::uint64_t seen = 0;
    std::uint64_t kept = 0;
    std::uint64_t dropped = 0;
    std::uint64_t evictions = 0;
};

// Bounded LRU dedup filter, applied to a per-core stream before signing.
// A repeat of a key within the window is dropped and does not refresh the
// key's stored timestamp (so a steady duplicate stream keeps being dropped
// relative to the last *kept* occurrence). Lookups refresh LRU recency.
//
// One instance per core; timestamps must be nondecreasing within a core's
// stream. A regressing timestamp is kept, counted in clock_warnings, and
// treated as a fresh occurrence.
class Reducer {
  public:
    explicit Reducer(WindowMode mode, std::size_t capacity = kDefaultReducerCapacity);

    // True = keep (sign it), false = drop as a near-duplicate.
    bool filter(const AuditEvent& event);

    const ReducerStats& stats() const { return stats_; }
    double current_window() const { return t_w_; }
    std::size_t size() const { return map_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t clock_warnings() const { return clock_warnings_; }

  private:
    using LruList = std::list<std::pair<ReductionKey, double>>;

    WindowMode mode_;
    std::size_t capacity_;
    double t_w_ = 1.0;
    LruList lru_;
    std::unordered_map<ReductionKey, LruList::iterator, ReductionKeyHash> map_;
    ReducerStats stats_;
    std::uint64_t clock_warnings_ = 0;
};

}  // namespace xlog
