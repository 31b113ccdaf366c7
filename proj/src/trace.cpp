#include "xlog/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "xlog/bytes.hpp"
#include "xlog/errors.hpp"

namespace xlog {
namespace {

constexpr const char* kTraceHeader = "xlog-trace 1";

// Relative weight per instant, normalized so one period integrates to 1.
// burst: 10x load in the middle fifth of each second; ramp: linear 0..2x
// over the whole duration.
double profile_weight(LoadProfile profile, double t_ms, double duration_ms) {
    switch (profile) {
        case LoadProfile::constant:
            return 1.0;
        case LoadProfile::burst: {
            const double phase = std::fmod(t_ms, 1000.0) / 1000.0;
            const bool hot = phase >= 0.4 && phase < 0.6;
            return hot ? 10.0 / 2.8 : 1.0 / 2.8;
        }
        case LoadProfile::ramp:
            return duration_ms > 0 ? 2.0 * t_ms / duration_ms : 1.0;
    }
    return 1.0;
}

struct EventMix {
    std::uint32_t syscall_id;
    double weight;
    bool wants_path;  // synthesize a short pathname as variable payload
};

// A mail-server-ish mix: mostly read/write, some file churn and socket work.
const std::vector<EventMix>& event_mix() {
    static const std::vector<EventMix> mix = {
        {0, 30.0, false},    // read
        {1, 30.0, false},    // write
        {2, 8.0, true},      // open
        {257, 6.0, true},    // openat
        {41, 4.0, false},    // socket
        {42, 4.0, true},     // connect
        {43, 3.0, false},    // accept
        {44, 3.0, false},    // sendto
        {45, 3.0, false},    // recvfrom
        {87, 2.0, true},     // unlink
        {83, 1.5, true},     // mkdir
        {90, 1.5, true},     // chmod
        {9, 1.5, false},     // mmap
        {56, 1.0, false},    // clone
        {59, 0.8, true},     // execve
        {62, 0.5, false},    // kill
        {105, 0.2, false},   // setuid
    };
    return mix;
}

std::string random_path(std::mt19937_64& rng) {
    static const char* dirs[] = {"/var/mail", "/tmp", "/etc", "/home/svc", "/var/run"};
    static const char* names[] = {"queue", "lock", "cfg", "sess", "spool", "tmp"};
    std::uniform_int_distribution<std::size_t> d(0, 4), n(0, 5), suffix(0, 999);
    std::ostringstream os;
    os << dirs[d(rng)] << '/' << names[n(rng)] << suffix(rng);
    return os.str();
}

AuditEvent synth_event(std::mt19937_64& rng, const SchemaTable& schema,
                       std::uint64_t time_ns, std::uint32_t core,
                       const std::vector<double>& cumulative) {
    std::uniform_real_distribution<double> pick(0.0, cumulative.back());
    const double x = pick(rng);
    std::size_t idx = std::lower_bound(cumulative.begin(), cumulative.end(), x) -
                      cumulative.begin();
    if (idx >= event_mix().size()) idx = event_mix().size() - 1;
    const EventMix& mix = event_mix()[idx];
    const SyscallSpec* sc = schema.find(mix.syscall_id);
    if (!sc) throw ConfigError("schema lacks syscall id " + std::to_string(mix.syscall_id));

    AuditEvent ev;
    ev.syscall_id = mix.syscall_id;
    ev.core_id = core;
    ev.timestamp_ns = time_ns;
    std::uniform_int_distribution<std::uint32_t> pid_d(100, 400);
    ev.pid = pid_d(rng);
    ev.fixed_args.resize(sc->arg_widths.size());
    for (std::size_t i = 0; i < sc->arg_widths.size(); ++i) {
        const unsigned bits = sc->arg_widths[i] * 8;
        const std::uint64_t mask =
            bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
        // Small values dominate real arg distributions (fds, flags, modes).
        std::uniform_int_distribution<std::uint64_t> small(0, 4096);
        ev.fixed_args[i] = small(rng) & mask;
    }
    if (mix.wants_path) {
        const std::string p = random_path(rng);
        ev.var_args.assign(p.begin(), p.end());
    }
    return ev;
}

}  // namespace

LoadProfile load_profile_from_name(const std::string& name) {
    if (name == "constant") return LoadProfile::constant;
    if (name == "burst") return LoadProfile::burst;
    if (name == "ramp") return LoadProfile::ramp;
    throw InputError("unknown load profile: " + name);
}

std::string load_profile_name(LoadProfile profile) {
    switch (profile) {
        case LoadProfile::constant: return "constant";
        case LoadProfile::burst: return "burst";
        case LoadProfile::ramp: return "ramp";
    }
    return "constant";
}

std::vector<AuditEvent> generate_events(const TraceSpec& spec, const SchemaTable& schema) {
    if (spec.n_cores == 0) throw ConfigError("trace needs at least one core");
    if (spec.rate_per_sec <= 0.0) throw ConfigError("event rate must be positive");
    if (spec.dup_rate < 0.0 || spec.dup_rate >= 1.0) {
        throw ConfigError("duplicate fraction must lie in [0, 1)");
    }

    std::vector<double> cumulative;
    cumulative.reserve(event_mix().size());
    double acc = 0.0;
    for (const auto& m : event_mix()) {
        acc += m.weight;
        cumulative.push_back(acc);
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::uint32_t> core_d(0, spec.n_cores - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Inhomogeneous Poisson by thinning a homogeneous stream at the profile
    // peak rate. Peak weight: burst 10/2.8, ramp 2, constant 1.
    double peak = 1.0;
    if (spec.profile == LoadProfile::burst) peak = 10.0 / 2.8;
    if (spec.profile == LoadProfile::ramp) peak = 2.0;
    const double peak_rate_per_ms = spec.rate_per_sec * peak / 1000.0;
    std::exponential_distribution<double> gap(peak_rate_per_ms);

    // Recent tuples for duplicate injection, newest last.
    struct Recent {
        std::uint32_t syscall_id;
        std::uint32_t pid;
        std::vector<std::uint64_t> fixed_args;
        Bytes var_args;
    };
    std::vector<Recent> recent;
    constexpr std::size_t kRecentCap = 64;

    std::vector<AuditEvent> events;
    double t_ms = 0.0;
    while (true) {
        t_ms += gap(rng);
        if (t_ms >= static_cast<double>(spec.duration_ms)) break;
        const double w = profile_weight(spec.profile, t_ms, static_cast<double>(spec.duration_ms));
        if (unit(rng) * peak > w) continue;  // thinned out

        const std::uint64_t time_ns = static_cast<std::uint64_t>(t_ms * 1e6);
        const std::uint32_t core = core_d(rng);

        if (!recent.empty() && unit(rng) < spec.dup_rate) {
            std::uniform_int_distribution<std::size_t> pick(0, recent.size() - 1);
            const Recent& r = recent[pick(rng)];
            AuditEvent ev;
            ev.syscall_id = r.syscall_id;
            ev.pid = r.pid;
            ev.fixed_args = r.fixed_args;
            ev.var_args = r.var_args;
            ev.core_id = core;
            ev.timestamp_ns = time_ns;
            events.push_back(std::move(ev));
            continue;
        }

        AuditEvent ev = synth_event(rng, schema, time_ns, core, cumulative);
        recent.push_back({ev.syscall_id, ev.pid, ev.fixed_args, ev.var_args});
        if (recent.size() > kRecentCap) recent.erase(recent.begin());
        events.push_back(std::move(ev));
    }
    return events;
}

void write_event_trace(const std::vector<AuditEvent>& events, const SchemaTable& schema,
                       std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& ev : events) {
        const SyscallSpec* sc = schema.find(ev.syscall_id);
        if (!sc) throw SchemaError("no schema entry for syscall id " +
                                   std::to_string(ev.syscall_id));
        out << ev.timestamp_ns << ' ' << ev.core_id << ' ' << ev.pid << ' ' << sc->name << ' ';
        if (ev.fixed_args.empty()) {
            out << '-';
        } else {
            for (std::size_t i = 0; i < ev.fixed_args.size(); ++i) {
                if (i) out << ',';
                out << ev.fixed_args[i];
            }
        }
        out << ' ';
        out << (ev.var_args.empty() ? "-" : to_hex(ev.var_args));
        out << '\n';
    }
    if (!out) throw InputError("write failed for event trace");
}

void write_event_trace_file(const std::vector<AuditEvent>& events, const SchemaTable& schema,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    write_event_trace(events, schema, out);
}

std::vector<AuditEvent> read_event_trace(std::istream& in, const SchemaTable& schema) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw ParseError("missing event trace header", 0);
    }
    std::vector<AuditEvent> events;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        std::uint64_t time_ns;
        std::uint32_t core;
        std::uint32_t pid;
        std::string name, args, var;
        if (!(row >> time_ns)) continue;  // blank or comment-only line
        if (!(row >> core >> pid >> name >> args >> var)) {
            throw ParseError("malformed event row", line_no);
        }
        std::string extra;
        if (row >> extra) throw ParseError("trailing fields in event row", line_no);

        AuditEvent ev;
        ev.timestamp_ns = time_ns;
        ev.core_id = core;
        ev.pid = pid;
        const SyscallSpec* sc = schema.find(std::string_view(name));
        if (!sc) throw ParseError("unknown syscall name: " + name, line_no);
        ev.syscall_id = sc->id;
        if (args != "-") {
            std::istringstream as(args);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                if (tok.empty()) throw ParseError("empty arg field", line_no);
                try {
                    ev.fixed_args.push_back(std::stoull(tok));
                } catch (const std::exception&) {
                    throw ParseError("bad arg value: " + tok, line_no);
                }
            }
        }
        if (ev.fixed_args.size() != sc->arg_widths.size()) {
            throw ParseError("arg count does not match schema for " + name, line_no);
        }
        if (var != "-") ev.var_args = from_hex(var);
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<AuditEvent> read_event_trace_file(const std::string& path,
                                              const SchemaTable& schema) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open for reading: " + path);
    return read_event_trace(in, schema);
}

void write_flow_trace(const std::vector<FlowArrival>& arrivals, std::ostream& out) {
    for (const auto& a : arrivals) {
        out << a.time_ms << ' ' << a.core << ' ' << a.bytes << '\n';
    }
    if (!out) throw InputError("write failed for arrival trace");
}

void write_flow_trace_file(const std::vector<FlowArrival>& arrivals, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    write_flow_trace(arrivals, out);
}

std::vector<FlowArrival> read_flow_trace(std::istream& in) {
    std::vector<FlowArrival> arrivals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        FlowArrival a;
        if (!(row >> a.time_ms)) continue;
        if (!(row >> a.core >> a.bytes)) throw ParseError("malformed arrival row", line_no);
        std::string extra;
        if (row >> extra) throw ParseError("trailing fields in arrival row", line_no);
        arrivals.push_back(a);
    }
    return arrivals;
}

std::vector<FlowArrival> read_flow_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open for reading: " + path);
    return read_flow_trace(in);
}

std::vector<FlowArrival> arrivals_from_events(const std::vector<AuditEvent>& events,
                                              const SchemaTable& schema) {
    std::vector<FlowArrival> arrivals;
    arrivals.reserve(events.size());
    for (const auto& ev : events) {
        const EncodedRecord rec = encode(ev, schema);
        FlowArrival a;
        a.time_ms = ev.timestamp_ns / 1000000;
        a.core = ev.core_id;
        a.bytes = rec.wire_length();
        arrivals.push_back(a);
    }
    return arrivals;
}

}  // namespace xlog
