#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xlog/encoder.hpp"
#include "xlog/flow.hpp"

namespace xlog {

enum class LoadProfile { constant, burst, ramp };

LoadProfile load_profile_from_name(const std::string& name);
std::string load_profile_name(LoadProfile profile);

// Synthetic workload knobs. rate_per_sec is the aggregate event rate across
// all cores; dup_rate is the fraction of events re-issued from a recent
// (pid, syscall, args) tuple so downstream dedup has something to find.
struct TraceSpec {
    std::uint64_t duration_ms = 1000;
    std::uint32_t n_cores = 4;
    double rate_per_sec = 2000.0;
    LoadProfile profile = LoadProfile::constant;
    double dup_rate = 0.0;
    std::uint64_t seed = 1;
};

// Deterministic in spec: same spec, same events. Timestamps are
// nondecreasing per core and events are globally time-sorted.
std::vector<AuditEvent> generate_events(const TraceSpec& spec, const SchemaTable& schema);

// Text trace: "xlog-trace 1" header, then one event per line:
//   time_ns core pid name args var
// args is a comma-joined decimal list or "-" when empty; var is lowercase
// hex or "-" when empty. '#' starts a comment.
void write_event_trace(const std::vector<AuditEvent>& events, const SchemaTable& schema,
                       std::ostream& out);
void write_event_trace_file(const std::vector<AuditEvent>& events, const SchemaTable& schema,
                            const std::string& path);
std::vector<AuditEvent> read_event_trace(std::istream& in, const SchemaTable& schema);
std::vector<AuditEvent> read_event_trace_file(const std::string& path, const SchemaTable& schema);

// Arrival trace for the transport simulator: one "time_ms core bytes" triple
// per line, '#' comments, no header.
void write_flow_trace(const std::vector<FlowArrival>& arrivals, std::ostream& out);
void write_flow_trace_file(const std::vector<FlowArrival>& arrivals, const std::string& path);
std::vector<FlowArrival> read_flow_trace(std::istream& in);
std::vector<FlowArrival> read_flow_trace_file(const std::string& path);

// Projects encoded records onto the transport model: millisecond arrival
// times and framed wire lengths.
std::vector<FlowArrival> arrivals_from_events(const std::vector<AuditEvent>& events,
                                              const SchemaTable& schema);

}  // namespace xlog
