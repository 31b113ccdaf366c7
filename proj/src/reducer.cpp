#include "xlog/reducer.hpp"

#include <algorithm>
#include <span>

#include "xlog/chaskey.hpp"
#include "xlog/errors.hpp"

namespace xlog {

std::size_t ReductionKeyHash::operator()(const ReductionKey& k) const {
    // splitmix-style mixing of the three fields
    std::uint64_t h = k.args_digest;
    h ^= (static_cast<std::uint64_t>(k.pid) << 32) | k.syscall_id;
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
}

ReductionKey reduction_key(const AuditEvent& event) {
    Bytes material;
    material.reserve(8 * event.fixed_args.size() + event.var_args.size());
    for (std::uint64_t arg : event.fixed_args) {
        append_le64(material, arg);
    }
    material.insert(material.end(), event.var_args.begin(), event.var_args.end());

    static const char kDigestKey[17] = "xlog-reducer-key";
    static const Key128 key = Key128::from_bytes(
        std::span(reinterpret_cast<const std::uint8_t*>(kDigestKey), 16));
    Tag t = chaskey_mac(key, material, 12, kTauDefault);

    return ReductionKey{event.pid, event.syscall_id, load_le64(t.bytes().data())};
}

double reduction_window(double t0, double t1) {
    if (t1 < t0) {
        throw InputError("window endpoints out of order: t1 < t0");
    }
    return std::min(1.0, 2.0 * (t1 - t0) + 0.001);
}

Reducer::Reducer(WindowMode mode, std::size_t capacity) : mode_(mode), capacity_(capacity) {
    if (capacity == 0) {
        throw ConfigError("reducer capacity must be at least 1");
    }
}

bool Reducer::filter(const AuditEvent& event) {
    stats_.seen += 1;
    const double now = static_cast<double>(event.timestamp_ns) * 1e-9;
    const ReductionKey key = reduction_key(event);

    auto it = map_.find(key);
    if (it != map_.end()) {
        lru_.splice(lru_.begin(), lru_, it->second);
        double last = it->second->second;

        if (now < last) {
            clock_warnings_ += 1;
        } else {
            double w = (mode_ == WindowMode::fixed) ? 1.0 : reduction_window(last, now);
            t_w_ = w;
            if (now - last <= w) {
                stats_.dropped += 1;
                return false;
            }
        }
        it->second->second = now;
        stats_.kept += 1;
        return true;
    }

    lru_.emplace_front(key, now);
    map_[key] = lru_.begin();
    if (map_.size() > capacity_) {
        map_.erase(lru_.back().first);
        lru_.pop_back();
        stats_.evictions += 1;
    }
    stats_.kept += 1;
    return true;
}

}  // namespace xlog
