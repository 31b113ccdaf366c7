// xlog: tamper-evident audit log toolkit.
//
// Subcommands cover the whole lifecycle: key generation, synthetic trace
// generation, signing into an archive, verification with prefix extraction,
// tamper fixtures, transport-loss simulation and parameter sweeps, result
// analysis, and a signing throughput bench.
//
// Exit codes: 0 success/intact, 2 archive tampered, 64 usage error,
// 65 bad file format or data, 70 internal error.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xlog/archive.hpp"
#include "xlog/analytics.hpp"
#include "xlog/auditor.hpp"
#include "xlog/bytes.hpp"
#include "xlog/chaskey.hpp"
#include "xlog/encoder.hpp"
#include "xlog/errors.hpp"
#include "xlog/flow.hpp"
#include "xlog/pipeline.hpp"
#include "xlog/reducer.hpp"
#include "xlog/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTampered = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

using json = nlohmann::json;

xlog::SchemaTable load_schema(const std::string& path) {
    if (path.empty()) return xlog::SchemaTable::builtin();
    return xlog::SchemaTable::load_file(path);
}

xlog::Key128 seed_from_spec(const std::string& hex, std::uint64_t seed_int, bool have_int) {
    if (!hex.empty()) {
        const xlog::Bytes raw = xlog::from_hex(hex);
        if (raw.size() != 16) throw xlog::InputError("--seed-hex needs exactly 32 hex digits");
        return xlog::Key128::from_bytes(raw);
    }
    std::array<std::uint8_t, 16> raw{};
    if (have_int) {
        // splitmix64 expansion: full 64-bit avalanche per output word.
        std::uint64_t x = seed_int;
        for (int i = 0; i < 2; ++i) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            z ^= z >> 31;
            xlog::store_le64(raw.data() + 8 * i, z);
        }
    } else {
        std::random_device rd;
        for (std::size_t i = 0; i < raw.size(); i += 4) {
            xlog::store_le32(raw.data() + i, rd());
        }
    }
    return xlog::Key128::from_bytes(raw);
}

// ---- keygen ----------------------------------------------------------

struct KeygenArgs {
    std::string out;
    unsigned tau = xlog::kTauDefault;
    std::uint32_t cores = 8;
    std::uint64_t cadence = xlog::kDefaultCadence;
    std::string seed_hex;
    std::uint64_t seed_int = 0;
    bool have_seed_int = false;
};

int cmd_keygen(const KeygenArgs& a) {
    xlog::KeyFile kf;
    kf.master_seed = seed_from_spec(a.seed_hex, a.seed_int, a.have_seed_int);
    kf.tau = a.tau;
    kf.n_cores = a.cores;
    kf.cadence = a.cadence;
    xlog::write_keyfile_file(kf, a.out);
    std::cout << "wrote " << a.out << " (tau=" << kf.tau << " cores=" << kf.n_cores
              << " cadence=" << kf.cadence << ")\n";
    return kExitOk;
}

// ---- generate --------------------------------------------------------

struct GenerateArgs {
    std::string out;
    std::string flow_out;
    std::string schema;
    std::uint64_t duration_ms = 1000;
    std::uint32_t cores = 4;
    double rate = 2000.0;
    std::string profile = "constant";
    double dup_rate = 0.0;
    std::uint64_t seed = 1;
};

int cmd_generate(const GenerateArgs& a) {
    const xlog::SchemaTable schema = load_schema(a.schema);
    xlog::TraceSpec spec;
    spec.duration_ms = a.duration_ms;
    spec.n_cores = a.cores;
    spec.rate_per_sec = a.rate;
    spec.profile = xlog::load_profile_from_name(a.profile);
    spec.dup_rate = a.dup_rate;
    spec.seed = a.seed;
    const auto events = xlog::generate_events(spec, schema);
    xlog::write_event_trace_file(events, schema, a.out);
    std::cout << "wrote " << a.out << " (" << events.size() << " events, "
              << a.duration_ms << " ms, profile " << a.profile << ")\n";
    if (!a.flow_out.empty()) {
        xlog::write_flow_trace_file(xlog::arrivals_from_events(events, schema), a.flow_out);
        std::cout << "wrote " << a.flow_out << " (arrival projection)\n";
    }
    return kExitOk;
}

// ---- sign ------------------------------------------------------------

struct SignArgs {
    std::string trace;
    std::string key;
    std::string out;
    std::string schema;
    bool reduce = false;
    std::string window = "dynamic";
    std::size_t reduce_capacity = xlog::kDefaultReducerCapacity;
    std::uint64_t cadence = 0;  // 0 = keyfile value
    std::uint64_t sp = 0, sr = 0, tp = 0, tr = 0;  // 0 = module default
};

void print_loss(const xlog::LossReport& r, const xlog::FlowConfig& cfg) {
    std::cout << "flow model: s_p=" << cfg.s_p << " s_r=" << cfg.s_r << " t_p=" << cfg.t_p_ms
              << "ms t_r=" << cfg.t_r_ms << "ms cores=" << cfg.n_cores
              << (cfg.feasible() ? " (feasible)" : " (infeasible)") << '\n';
    std::cout << "  generated " << r.d_total << " B, delivered " << r.delivered
              << " B, dropped " << r.d_discarded() << " B (core " << r.dropped_core << ", ring "
              << r.dropped_ring << "), flushes " << r.flushes << ", p_loss "
              << std::setprecision(6) << r.p_loss() << '\n';
}

int cmd_sign(const SignArgs& a) {
    const xlog::SchemaTable schema = load_schema(a.schema);
    const xlog::KeyFile kf = xlog::read_keyfile_file(a.key);
    const auto events = xlog::read_event_trace_file(a.trace, schema);

    std::vector<xlog::AuditEvent> kept;
    kept.reserve(events.size());
    if (a.reduce) {
        const xlog::WindowMode mode =
            a.window == "fixed" ? xlog::WindowMode::fixed : xlog::WindowMode::dynamic;
        std::vector<xlog::Reducer> reducers;
        reducers.reserve(kf.n_cores);
        for (std::uint32_t c = 0; c < kf.n_cores; ++c) {
            reducers.emplace_back(mode, a.reduce_capacity);
        }
        for (const auto& ev : events) {
            if (ev.core_id >= kf.n_cores) {
                throw xlog::StructError("event core out of range for this keyfile");
            }
            if (reducers[ev.core_id].filter(ev)) kept.push_back(ev);
        }
        std::uint64_t seen = 0, dropped = 0;
        for (const auto& r : reducers) {
            seen += r.stats().seen;
            dropped += r.stats().dropped;
        }
        std::cout << "reducer: " << seen << " seen, " << dropped << " dropped, " << kept.size()
                  << " kept\n";
    } else {
        kept = events;
    }

    const std::uint64_t cadence = a.cadence ? a.cadence : kf.cadence;
    xlog::Pipeline pipeline(kf.master_seed, kf.n_cores, kf.tau, cadence);
    xlog::LogArchive archive;
    archive.tau = kf.tau;
    archive.n_cores = kf.n_cores;
    archive.cadence = cadence;
    archive.schema_hash = schema.hash();
    archive.lines.resize(kf.n_cores);
    for (std::uint32_t c = 0; c < kf.n_cores; ++c) archive.lines[c].core_id = c;

    for (const auto& ev : kept) {
        xlog::EncodedRecord rec = xlog::encode(ev, schema);
        if (auto cp = pipeline.ingest(rec)) {
            archive.lines[rec.core_id].checkpoints.push_back(*cp);
        }
        archive.records.push_back(std::move(rec));
    }
    for (const auto& summary : pipeline.finalize()) {
        auto& line = archive.lines[summary.core_id];
        line.final_tag = summary.final_tag;
        line.terminal = summary.terminal;
    }
    xlog::write_archive_file(archive, a.out);

    // Transport model: reports what the two-level cache would drop for this
    // arrival pattern. The archive itself carries every signed record.
    xlog::FlowConfig cfg;
    cfg.n_cores = kf.n_cores;
    if (a.sp) cfg.s_p = a.sp;
    if (a.sr) cfg.s_r = a.sr;
    if (a.tp) cfg.t_p_ms = a.tp;
    if (a.tr) cfg.t_r_ms = a.tr;
    const auto arrivals = xlog::arrivals_from_events(kept, schema);
    const xlog::LossReport loss = xlog::simulate(cfg, arrivals);

    std::cout << "wrote " << a.out << " (" << archive.records.size() << " records, "
              << kf.n_cores << " lines, tau=" << kf.tau << ", cadence=" << cadence << ")\n";
    print_loss(loss, cfg);
    return kExitOk;
}

// ---- verify ----------------------------------------------------------

struct VerifyArgs {
    std::string archive;
    std::string key;
    std::string schema;
    std::string report;
};

int cmd_verify(const VerifyArgs& a) {
    const xlog::KeyFile kf = xlog::read_keyfile_file(a.key);
    const xlog::LogArchive archive = xlog::read_archive_file(a.archive);
    if (archive.tau != kf.tau) {
        throw xlog::StructError("archive tag width does not match keyfile");
    }
    if (!a.schema.empty()) {
        const xlog::SchemaTable schema = xlog::SchemaTable::load_file(a.schema);
        if (schema.hash() != archive.schema_hash) {
            throw xlog::SchemaError("schema hash does not match archive header");
        }
    }

    const xlog::AuditInput input = archive.to_audit_input(kf.master_seed);
    const xlog::AuditVerdict verdict = xlog::verify(input);

    json report;
    report["intact"] = verdict.intact();
    report["tau"] = archive.tau;
    report["n_cores"] = archive.n_cores;
    report["cadence"] = archive.cadence;
    report["records"] = archive.records.size();
    report["lines"] = json::array();
    for (std::size_t i = 0; i < verdict.lines.size(); ++i) {
        const auto& lv = verdict.lines[i];
        json jl;
        jl["core"] = i;
        jl["status"] = lv.status == xlog::LineStatus::intact ? "intact" : "tampered";
        jl["records"] = lv.record_count;
        jl["s"] = lv.s;
        jl["prefix_len"] = lv.prefix_len;
        if (lv.first_mismatch) {
            jl["first_mismatch"] = *lv.first_mismatch;
        } else {
            jl["first_mismatch"] = nullptr;
        }
        report["lines"].push_back(jl);
    }
    if (!a.report.empty()) {
        std::ofstream out(a.report);
        if (!out) throw xlog::InputError("cannot open for writing: " + a.report);
        out << report.dump(2) << '\n';
    }

    std::cout << "archive: " << archive.records.size() << " records, " << archive.n_cores
              << " lines, tau=" << archive.tau << ", cadence=" << archive.cadence << '\n';
    for (std::size_t i = 0; i < verdict.lines.size(); ++i) {
        const auto& lv = verdict.lines[i];
        std::cout << "line " << i << ": "
                  << (lv.status == xlog::LineStatus::intact ? "intact  " : "tampered")
                  << " records=" << lv.record_count << " s=" << lv.s
                  << " prefix=" << lv.prefix_len;
        if (lv.first_mismatch) std::cout << " first_mismatch=" << *lv.first_mismatch;
        std::cout << '\n';
    }
    std::cout << "verdict: " << (verdict.intact() ? "INTACT" : "TAMPERED") << '\n';
    return verdict.intact() ? kExitOk : kExitTampered;
}

// ---- attack ----------------------------------------------------------

struct AttackArgs {
    std::string archive;
    std::string out;
    std::string mode;
    std::uint32_t line = 0;
    std::uint64_t keep = 0;
    bool present_checkpoint = false;
    std::uint64_t record = 1;
    std::size_t byte = 0;
    unsigned bit = 0;
    std::string donor;
    std::uint32_t donor_line = 0;
    bool have_donor_line = false;
};

// Positions (zero-based, in archive order) of one line's records.
std::vector<std::size_t> line_record_positions(const xlog::LogArchive& a, std::uint32_t line) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        if (a.records[i].core_id == line) pos.push_back(i);
    }
    return pos;
}

int cmd_attack(const AttackArgs& a) {
    xlog::LogArchive archive = xlog::read_archive_file(a.archive);
    if (a.line >= archive.n_cores) throw xlog::InputError("line out of range");
    const std::vector<std::size_t> pos = line_record_positions(archive, a.line);
    if (pos.empty()) throw xlog::InputError("target line has no records to attack");
    auto& line = archive.lines[a.line];

    if (a.mode == "truncate") {
        if (a.keep >= pos.size()) {
            throw xlog::InputError("--keep must be smaller than the line's record count");
        }
        std::vector<bool> drop(archive.records.size(), false);
        for (std::size_t k = a.keep; k < pos.size(); ++k) drop[pos[k]] = true;
        std::vector<xlog::EncodedRecord> remaining;
        remaining.reserve(archive.records.size());
        for (std::size_t i = 0; i < archive.records.size(); ++i) {
            if (!drop[i]) remaining.push_back(std::move(archive.records[i]));
        }
        archive.records = std::move(remaining);
        std::erase_if(line.checkpoints,
                      [&](const xlog::Checkpoint& c) { return c.index > a.keep; });
        line.terminal.reset();
        if (a.present_checkpoint) {
            auto it = std::find_if(line.checkpoints.begin(), line.checkpoints.end(),
                                   [&](const xlog::Checkpoint& c) { return c.index == a.keep; });
            if (it == line.checkpoints.end()) {
                throw xlog::InputError("no stored checkpoint at the truncation point");
            }
            line.final_tag = it->encrypted_tag;
        }
        std::cout << "truncated line " << a.line << " to " << a.keep << " records"
                  << (a.present_checkpoint ? " (stored checkpoint presented as final tag)" : "")
                  << '\n';
    } else if (a.mode == "modify") {
        if (a.record == 0 || a.record > pos.size()) {
            throw xlog::InputError("--record out of range (1-based within the line)");
        }
        auto& body = archive.records[pos[a.record - 1]].mac_input;
        if (a.byte >= body.size()) throw xlog::InputError("--byte out of range");
        if (a.bit > 7) throw xlog::InputError("--bit must be 0..7");
        body[a.byte] ^= static_cast<std::uint8_t>(1u << a.bit);
        std::cout << "flipped bit " << a.bit << " of byte " << a.byte << " in record "
                  << a.record << " of line " << a.line << '\n';
    } else if (a.mode == "replay") {
        if (a.donor.empty()) throw xlog::InputError("--mode replay needs --donor");
        const xlog::LogArchive donor = xlog::read_archive_file(a.donor);
        const std::uint32_t src = a.have_donor_line ? a.donor_line : a.line;
        if (src >= donor.n_cores) throw xlog::InputError("--donor-line out of range");
        if (donor.tau != archive.tau) {
            throw xlog::StructError("donor archive tag width does not match target");
        }
        std::erase_if(archive.records,
                      [&](const xlog::EncodedRecord& r) { return r.core_id == a.line; });
        for (std::size_t i : line_record_positions(donor, src)) {
            xlog::EncodedRecord rec = donor.records[i];
            rec.core_id = a.line;
            archive.records.push_back(std::move(rec));
        }
        const auto& dline = donor.lines[src];
        line.checkpoints = dline.checkpoints;
        line.final_tag = dline.final_tag;
        line.terminal = dline.terminal;
        std::cout << "replaced line " << a.line << " with donor line " << src << '\n';
    } else {
        throw xlog::InputError("--mode must be truncate, modify or replay");
    }

    xlog::write_archive_file(archive, a.out);
    std::cout << "wrote " << a.out << '\n';
    return kExitOk;
}

// ---- simulate / sweep ------------------------------------------------

struct SimulateArgs {
    std::string trace;
    std::uint64_t sp = 32 * 1024, sr = 64 * 1024 * 1024, tp = 200, tr = 1000;
    std::uint32_t cores = 8;
};

int cmd_simulate(const SimulateArgs& a) {
    const auto trace = xlog::read_flow_trace_file(a.trace);
    xlog::FlowConfig cfg{a.sp, a.sr, a.tp, a.tr, a.cores};
    const xlog::LossReport loss = xlog::simulate(cfg, trace);
    print_loss(loss, cfg);
    std::cout << "required ring for loss-free steady state: "
              << xlog::required_ring_size(cfg.n_cores, cfg.s_p, cfg.t_p_ms, cfg.t_r_ms)
              << " B\n";
    return kExitOk;
}

struct SweepArgs {
    std::string trace;
    std::string out;
    std::string grid = "reference";
    std::uint32_t cores = 8;
};

int cmd_sweep(const SweepArgs& a) {
    if (a.grid != "reference") throw xlog::InputError("--grid supports only: reference");
    const auto trace = xlog::read_flow_trace_file(a.trace);
    const auto grid = xlog::reference_grid(a.cores);
    const auto rows = xlog::sweep(grid, trace);
    std::ofstream out(a.out);
    if (!out) throw xlog::InputError("cannot open for writing: " + a.out);
    out << "s_p,s_r,t_p,t_r,p_loss,flushes\n";
    out << std::setprecision(17);
    for (const auto& row : rows) {
        out << row.config.s_p << ',' << row.config.s_r << ',' << row.config.t_p_ms << ','
            << row.config.t_r_ms << ',' << row.p_loss << ',' << row.flushes << '\n';
    }
    if (!out) throw xlog::InputError("write failed for sweep output");
    std::cout << "wrote " << a.out << " (" << rows.size() << " configurations)\n";
    return kExitOk;
}

// ---- analyze ---------------------------------------------------------

struct AnalyzeArgs {
    std::string fieller;
    std::string factorial;
    double confidence = 0.90;
};

std::vector<std::vector<double>> read_csv_rows(const std::string& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw xlog::InputError("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() &&
                       (cell[used] == ' ' || cell[used] == '\t' || cell[used] == '\r')) {
                    ++used;
                }
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (rows.empty()) continue;  // header line
            throw xlog::ParseError("non-numeric cell in CSV", line_no);
        }
        if (row.size() != columns) {
            throw xlog::ParseError("expected " + std::to_string(columns) + " columns", line_no);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_analyze(const AnalyzeArgs& a) {
    if (a.fieller.empty() == a.factorial.empty()) {
        throw xlog::InputError("pass exactly one of --fieller or --factorial");
    }
    if (!a.fieller.empty()) {
        const auto rows = read_csv_rows(a.fieller, 2);
        std::vector<double> xs, ys;
        xs.reserve(rows.size());
        ys.reserve(rows.size());
        for (const auto& r : rows) {
            xs.push_back(r[0]);
            ys.push_back(r[1]);
        }
        const xlog::RatioCI ci = xlog::fieller_ci(xs, ys, a.confidence);
        std::cout << std::setprecision(10) << "ratio of means: " << ci.rho << '\n'
                  << static_cast<int>(a.confidence * 100 + 0.5) << "% CI: [" << ci.lo << ", "
                  << ci.hi << "]  (n=" << ci.n << ")\n";
        return kExitOk;
    }
    const auto rows = read_csv_rows(a.factorial, 3);
    std::array<std::vector<double>, 4> cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int xs = rows[i][0] > 0 ? 1 : -1;
        const int xb = rows[i][1] > 0 ? 1 : -1;
        cells[xlog::factorial_cell(xs, xb)].push_back(rows[i][2]);
    }
    const xlog::FactorialFit fit = xlog::factorial_fit(cells);
    std::cout << std::setprecision(10) << "model: y = " << fit.q0 << " + " << fit.qs << "*x_s + "
              << fit.qb << "*x_b + " << fit.qi << "*x_s*x_b   (r=" << fit.r << ")\n"
              << "allocation of variation: F_s=" << fit.f_s << " F_b=" << fit.f_b
              << " F_i=" << fit.f_i << " F_e=" << fit.f_e << '\n'
              << "residual sum of squares: " << fit.s_e << '\n';
    return kExitOk;
}

// ---- bench -----------------------------------------------------------

struct BenchArgs {
    std::string mode;  // empty = both
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t records = 200000;
    std::uint32_t cores = 4;
    unsigned tau = xlog::kTauDefault;
    std::uint64_t seed = 7;
};

struct BenchRun {
    std::string mode;
    unsigned threads = 1;
    double seconds = 0.0;
    double rps = 0.0;
    std::vector<xlog::Tag> finals;
};

std::vector<xlog::EncodedRecord> bench_workload(const BenchArgs& a) {
    const xlog::SchemaTable& schema = xlog::SchemaTable::builtin();
    xlog::TraceSpec spec;
    spec.duration_ms = 1000;
    spec.n_cores = a.cores;
    spec.rate_per_sec = static_cast<double>(a.records);
    spec.seed = a.seed;
    std::vector<xlog::AuditEvent> events = xlog::generate_events(spec, schema);
    if (events.empty()) throw xlog::ConfigError("bench workload came out empty");
    // Poisson count lands near --records; pad by cycling, then trim exact.
    const std::size_t base = events.size();
    while (events.size() < a.records) {
        xlog::AuditEvent ev = events[events.size() % base];
        ev.timestamp_ns += 1000000000ull * (events.size() / base);
        events.push_back(std::move(ev));
    }
    events.resize(a.records);
    std::vector<xlog::EncodedRecord> records;
    records.reserve(events.size());
    for (const auto& ev : events) records.push_back(xlog::encode(ev, schema));
    return records;
}

BenchRun bench_single_line(const BenchArgs& a, const std::vector<xlog::EncodedRecord>& records) {
    xlog::Key128 seed = seed_from_spec("", a.seed, true);
    xlog::SigningLine line = xlog::line_init(seed, 0, 1, a.tau);
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& rec : records) line.sign(rec.mac_input, false);
    const auto t1 = std::chrono::steady_clock::now();
    BenchRun run;
    run.mode = "single-line";
    run.threads = 1;
    run.seconds = std::chrono::duration<double>(t1 - t0).count();
    run.rps = run.seconds > 0 ? static_cast<double>(records.size()) / run.seconds : 0.0;
    run.finals.push_back(line.tag());
    return run;
}

BenchRun bench_per_core(const BenchArgs& a, const std::vector<xlog::EncodedRecord>& records) {
    xlog::Key128 seed = seed_from_spec("", a.seed, true);
    std::vector<std::vector<const xlog::EncodedRecord*>> by_core(a.cores);
    for (const auto& rec : records) by_core[rec.core_id].push_back(&rec);
    std::vector<xlog::SigningLine> lines;
    lines.reserve(a.cores);
    for (std::uint32_t c = 0; c < a.cores; ++c) {
        lines.push_back(xlog::line_init(seed, c, a.cores, a.tau));
    }

    const unsigned workers = std::min<unsigned>(a.threads, a.cores);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            // Striped line ownership: each line has exactly one writer.
            for (std::uint32_t c = w; c < a.cores; c += workers) {
                for (const auto* rec : by_core[c]) lines[c].sign(rec->mac_input, false);
            }
        });
    }
    for (auto& t : pool) t.join();
    const auto t1 = std::chrono::steady_clock::now();

    BenchRun run;
    run.mode = "per-core";
    run.threads = workers;
    run.seconds = std::chrono::duration<double>(t1 - t0).count();
    run.rps = run.seconds > 0 ? static_cast<double>(records.size()) / run.seconds : 0.0;
    for (const auto& line : lines) run.finals.push_back(line.tag());
    return run;
}

int cmd_bench(const BenchArgs& a) {
    if (a.threads == 0) throw xlog::ConfigError("--threads must be at least 1");
    if (a.cores == 0) throw xlog::ConfigError("--cores must be at least 1");
    if (!a.mode.empty() && a.mode != "single-line" && a.mode != "per-core") {
        throw xlog::InputError("--mode must be single-line or per-core");
    }
    const auto records = bench_workload(a);
    std::vector<BenchRun> runs;
    if (a.mode.empty() || a.mode == "single-line") {
        runs.push_back(bench_single_line(a, records));
    }
    if (a.mode.empty() || a.mode == "per-core") {
        runs.push_back(bench_per_core(a, records));
    }

    std::cout << std::left << std::setw(13) << "mode" << std::setw(9) << "threads"
              << std::setw(10) << "records" << std::setw(11) << "seconds"
              << "records_per_sec\n";
    for (const auto& run : runs) {
        std::cout << std::left << std::setw(13) << run.mode << std::setw(9) << run.threads
                  << std::setw(10) << records.size() << std::setw(11) << std::setprecision(4)
                  << std::fixed << run.seconds << std::setprecision(0) << run.rps << '\n';
        std::cout.unsetf(std::ios::fixed);
    }
    for (const auto& run : runs) {
        std::cout << run.mode << " final tags:";
        for (const auto& t : run.finals) std::cout << ' ' << t.hex();
        std::cout << '\n';
    }
    if (runs.size() == 2 && runs[0].seconds > 0 && runs[1].rps > 0) {
        std::cout << std::setprecision(3) << "per-core / single-line throughput: "
                  << runs[1].rps / runs[0].rps << "x with " << runs[1].threads
                  << " worker(s), " << std::thread::hardware_concurrency()
                  << " hardware thread(s)\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xlog: tamper-evident audit log toolkit"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 success/intact, 2 tampered, 64 usage, 65 bad data, 70 internal");

    KeygenArgs kg;
    auto* keygen = app.add_subcommand("keygen", "create a keyfile (master seed + parameters)");
    keygen->add_option("--out", kg.out, "keyfile path")->required();
    keygen->add_option("--tau", kg.tau, "tag width in bits (16, 64, 128)");
    keygen->add_option("--cores", kg.cores, "number of signing lines");
    keygen->add_option("--cadence", kg.cadence, "checkpoint every k records");
    keygen->add_option("--seed-hex", kg.seed_hex, "master seed, 32 hex digits");
    auto* kg_seed = keygen->add_option("--seed", kg.seed_int, "derive seed from integer");
    keygen->callback([&] { kg.have_seed_int = kg_seed->count() > 0; });

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "synthesize an event trace");
    generate->add_option("--out", gen.out, "event trace path")->required();
    generate->add_option("--flow-out", gen.flow_out, "also write the arrival projection");
    generate->add_option("--schema", gen.schema, "schema file (default: builtin)");
    generate->add_option("--duration-ms", gen.duration_ms, "trace length in ms");
    generate->add_option("--cores", gen.cores, "cores emitting events");
    generate->add_option("--rate", gen.rate, "aggregate events per second");
    generate->add_option("--profile", gen.profile, "constant, burst or ramp");
    generate->add_option("--dup-rate", gen.dup_rate, "fraction of near-duplicate events [0,1)");
    generate->add_option("--seed", gen.seed, "generator seed");

    SignArgs sg;
    auto* sign = app.add_subcommand("sign", "sign an event trace into an archive");
    sign->add_option("--trace", sg.trace, "event trace path")->required();
    sign->add_option("--key", sg.key, "keyfile path")->required();
    sign->add_option("--out", sg.out, "archive path")->required();
    sign->add_option("--schema", sg.schema, "schema file (default: builtin)");
    sign->add_flag("--reduce", sg.reduce, "drop near-duplicates before signing");
    sign->add_option("--window", sg.window, "reducer window: fixed or dynamic")
        ->check(CLI::IsMember({"fixed", "dynamic"}));
    sign->add_option("--reduce-capacity", sg.reduce_capacity, "reducer LRU capacity");
    sign->add_option("--cadence", sg.cadence, "override keyfile checkpoint cadence");
    sign->add_option("--sp", sg.sp, "flow model: per-core buffer bytes");
    sign->add_option("--sr", sg.sr, "flow model: ring bytes");
    sign->add_option("--tp", sg.tp, "flow model: flush interval ms");
    sign->add_option("--tr", sg.tr, "flow model: drain interval ms");

    VerifyArgs vf;
    auto* verify = app.add_subcommand("verify", "verify an archive against its keyfile");
    verify->add_option("--archive", vf.archive, "archive path")->required();
    verify->add_option("--key", vf.key, "keyfile path")->required();
    verify->add_option("--schema", vf.schema, "check schema hash against this file");
    verify->add_option("--report", vf.report, "write JSON report here");

    AttackArgs at;
    auto* attack = app.add_subcommand("attack", "produce a tampered copy of an archive");
    attack->add_option("--archive", at.archive, "input archive")->required();
    attack->add_option("--out", at.out, "output archive")->required();
    attack->add_option("--mode", at.mode, "truncate, modify or replay")->required();
    attack->add_option("--line", at.line, "target line");
    attack->add_option("--keep", at.keep, "truncate: records to keep");
    attack->add_flag("--present-checkpoint", at.present_checkpoint,
                     "truncate: present the stored checkpoint at --keep as the final tag");
    attack->add_option("--record", at.record, "modify: 1-based record within the line");
    attack->add_option("--byte", at.byte, "modify: byte offset in the record");
    attack->add_option("--bit", at.bit, "modify: bit 0..7");
    attack->add_option("--donor", at.donor, "replay: donor archive");
    auto* dl = attack->add_option("--donor-line", at.donor_line, "replay: donor line");
    attack->callback([&] { at.have_donor_line = dl->count() > 0; });

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "replay an arrival trace through the "
                                                    "two-level cache model");
    simulate->add_option("--trace", sim.trace, "arrival trace path")->required();
    simulate->add_option("--sp", sim.sp, "per-core buffer bytes");
    simulate->add_option("--sr", sim.sr, "ring bytes");
    simulate->add_option("--tp", sim.tp, "flush interval ms");
    simulate->add_option("--tr", sim.tr, "drain interval ms");
    simulate->add_option("--cores", sim.cores, "core count");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "loss across a parameter grid, as CSV");
    sweep->add_option("--trace", sw.trace, "arrival trace path")->required();
    sweep->add_option("--out", sw.out, "CSV output path")->required();
    sweep->add_option("--grid", sw.grid, "grid name (reference)");
    sweep->add_option("--cores", sw.cores, "core count");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Fieller ratio CI or 2^2 factorial fit");
    analyze->add_option("--fieller", an.fieller, "CSV of x,y pairs");
    analyze->add_option("--factorial", an.factorial, "CSV of x_s,x_b,y rows");
    analyze->add_option("--confidence", an.confidence, "Fieller confidence level");

    BenchArgs bn;
    auto* bench = app.add_subcommand("bench", "signing throughput, single-line vs per-core");
    bench->add_option("--mode", bn.mode, "single-line or per-core (default: both)");
    bench->add_option("--threads", bn.threads, "worker threads for per-core mode");
    bench->add_option("--records", bn.records, "records to sign");
    bench->add_option("--cores", bn.cores, "signing lines in per-core mode");
    bench->add_option("--tau", bn.tau, "tag width in bits");
    bench->add_option("--seed", bn.seed, "workload seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(kg);
        if (generate->parsed()) return cmd_generate(gen);
        if (sign->parsed()) return cmd_sign(sg);
        if (verify->parsed()) return cmd_verify(vf);
        if (attack->parsed()) return cmd_attack(at);
        if (simulate->parsed()) return cmd_simulate(sim);
        if (sweep->parsed()) return cmd_sweep(sw);
        if (analyze->parsed()) return cmd_analyze(an);
        if (bench->parsed()) return cmd_bench(bn);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const xlog::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const xlog::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const xlog::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const xlog::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
