// Python surface for the toolkit: primitives (MAC, combiner, PRF), the
// signing pipeline, file-level sign/verify drivers, the transport-loss
// model, the dedup window, and the analysis routines. Keys and tags cross
// the boundary as bytes; a tag's width is implied by its length.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "xlog/analytics.hpp"
#include "xlog/archive.hpp"
#include "xlog/auditor.hpp"
#include "xlog/chaskey.hpp"
#include "xlog/combiner.hpp"
#include "xlog/encoder.hpp"
#include "xlog/errors.hpp"
#include "xlog/flow.hpp"
#include "xlog/pipeline.hpp"
#include "xlog/protocol.hpp"
#include "xlog/reducer.hpp"
#include "xlog/trace.hpp"

namespace py = pybind11;

namespace {

xlog::Bytes to_bytes(const py::bytes& b) {
    const std::string s = b;
    return xlog::Bytes(s.begin(), s.end());
}

py::bytes from_span(std::span<const std::uint8_t> s) {
    return py::bytes(reinterpret_cast<const char*>(s.data()), s.size());
}

py::bytes from_tag(const xlog::Tag& t) { return from_span(t.bytes()); }

xlog::Key128 key_from(const py::bytes& b) {
    const xlog::Bytes raw = to_bytes(b);
    if (raw.size() != 16) throw xlog::InputError("keys are exactly 16 bytes");
    return xlog::Key128::from_bytes(raw);
}

unsigned tau_from_len(std::size_t n) {
    const unsigned tau = static_cast<unsigned>(n * 8);
    if (!xlog::valid_tau(tau)) throw xlog::StructError("tag length implies no valid width");
    return tau;
}

xlog::Tag tag_from(const py::bytes& b) {
    const xlog::Bytes raw = to_bytes(b);
    return xlog::Tag::from_bytes(raw, tau_from_len(raw.size()));
}

py::object checkpoint_obj(const std::optional<xlog::Checkpoint>& cp) {
    if (!cp) return py::none();
    return py::make_tuple(cp->index, from_tag(cp->encrypted_tag));
}

py::dict verdict_dict(const xlog::AuditVerdict& verdict) {
    py::dict out;
    out["intact"] = verdict.intact();
    py::list lines;
    for (std::size_t i = 0; i < verdict.lines.size(); ++i) {
        const auto& lv = verdict.lines[i];
        py::dict jl;
        jl["core"] = i;
        jl["intact"] = lv.status == xlog::LineStatus::intact;
        jl["records"] = lv.record_count;
        jl["s"] = lv.s;
        jl["prefix_len"] = lv.prefix_len;
        jl["first_mismatch"] =
            lv.first_mismatch ? py::cast(*lv.first_mismatch) : py::object(py::none());
        lines.append(jl);
    }
    out["lines"] = lines;
    return out;
}

}  // namespace

PYBIND11_MODULE(xlog, m) {
    m.doc() = "tamper-evident audit logging toolkit";

    py::register_exception<xlog::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<xlog::StructError>(m, "StructError", PyExc_ValueError);
    py::register_exception<xlog::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<xlog::InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<xlog::SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<xlog::InvalidIntervalError>(m, "InvalidIntervalError",
                                                       PyExc_ArithmeticError);

    // Primitives.
    m.def(
        "chaskey_mac",
        [](const py::bytes& key, const py::bytes& message, unsigned rounds, unsigned tau) {
            const xlog::Bytes msg = to_bytes(message);
            return from_tag(xlog::chaskey_mac(key_from(key), msg, rounds, tau));
        },
        py::arg("key"), py::arg("message"), py::arg("rounds") = 12, py::arg("tau") = 64);
    m.def(
        "prf",
        [](const py::bytes& state, int selector) {
            const auto out = xlog::prf_f(key_from(state), selector).to_bytes();
            return py::bytes(reinterpret_cast<const char*>(out.data()), out.size());
        },
        py::arg("state"), py::arg("selector"));
    m.def(
        "combine",
        [](const py::bytes& a, const py::bytes& b) {
            return from_tag(xlog::combine(tag_from(a), tag_from(b)));
        },
        py::arg("a"), py::arg("b"));

    // Signing.
    py::class_<xlog::SigningLine>(m, "SigningLine")
        .def(py::init([](const py::bytes& key, const py::bytes& state, unsigned tau) {
                 return xlog::SigningLine(key_from(key), key_from(state), tau);
             }),
             py::arg("key"), py::arg("state"), py::arg("tau") = 64)
        .def(
            "sign",
            [](xlog::SigningLine& self, const py::bytes& message, bool checkpoint) {
                const xlog::Bytes msg = to_bytes(message);
                return checkpoint_obj(self.sign(msg, checkpoint));
            },
            py::arg("message"), py::arg("checkpoint") = false)
        .def("seal",
             [](xlog::SigningLine& self) {
                 const xlog::Checkpoint cp = self.seal();
                 return py::make_tuple(cp.index, from_tag(cp.encrypted_tag));
             })
        .def_property_readonly("tag", [](const xlog::SigningLine& s) { return from_tag(s.tag()); })
        .def_property_readonly("index", &xlog::SigningLine::index)
        .def_property_readonly("tau", &xlog::SigningLine::tau);
    m.def(
        "line_init",
        [](const py::bytes& seed, std::uint32_t core, std::uint32_t n_cores, unsigned tau) {
            return xlog::line_init(key_from(seed), core, n_cores, tau);
        },
        py::arg("seed"), py::arg("core"), py::arg("n_cores"), py::arg("tau") = 64);

    py::class_<xlog::Pipeline>(m, "Pipeline")
        .def(py::init([](const py::bytes& seed, std::uint32_t n_cores, unsigned tau,
                         std::uint64_t cadence) {
                 return xlog::Pipeline(key_from(seed), n_cores, tau, cadence);
             }),
             py::arg("seed"), py::arg("n_cores"), py::arg("tau") = 64,
             py::arg("cadence") = xlog::kDefaultCadence)
        .def(
            "ingest",
            [](xlog::Pipeline& self, std::uint32_t core, const py::bytes& message) {
                xlog::EncodedRecord rec;
                rec.mac_input = to_bytes(message);
                rec.core_id = core;
                return checkpoint_obj(self.ingest(rec));
            },
            py::arg("core"), py::arg("message"))
        .def("finalize",
             [](xlog::Pipeline& self) {
                 py::list out;
                 for (const auto& s : self.finalize()) {
                     py::dict d;
                     d["core"] = s.core_id;
                     d["records"] = s.record_count;
                     d["final_tag"] = from_tag(s.final_tag);
                     d["terminal"] = py::make_tuple(s.terminal.index,
                                                    from_tag(s.terminal.encrypted_tag));
                     out.append(d);
                 }
                 return out;
             })
        .def_property_readonly("n_cores", &xlog::Pipeline::n_cores)
        .def_property_readonly("tau", &xlog::Pipeline::tau)
        .def_property_readonly("cadence", &xlog::Pipeline::cadence);

    // Record encoding over the builtin schema.
    m.def(
        "encode_event",
        [](const std::string& syscall, std::uint32_t pid, std::uint64_t timestamp_ns,
           std::uint32_t core, const std::vector<std::uint64_t>& args, const py::bytes& var) {
            const auto& schema = xlog::SchemaTable::builtin();
            const xlog::SyscallSpec* sc = schema.find(std::string_view(syscall));
            if (!sc) throw xlog::SchemaError("unknown syscall name: " + syscall);
            xlog::AuditEvent ev;
            ev.syscall_id = sc->id;
            ev.pid = pid;
            ev.timestamp_ns = timestamp_ns;
            ev.core_id = core;
            ev.fixed_args = args;
            ev.var_args = to_bytes(var);
            return from_span(xlog::encode(ev, schema).mac_input);
        },
        py::arg("syscall"), py::arg("pid"), py::arg("timestamp_ns"), py::arg("core") = 0,
        py::arg("args") = std::vector<std::uint64_t>{}, py::arg("var") = py::bytes());
    m.def(
        "decode_event",
        [](const py::bytes& data) {
            const auto& schema = xlog::SchemaTable::builtin();
            xlog::EncodedRecord rec;
            rec.mac_input = to_bytes(data);
            const xlog::AuditEvent ev = xlog::decode(rec, schema);
            py::dict d;
            d["syscall"] = schema.find(ev.syscall_id)->name;
            d["pid"] = ev.pid;
            d["timestamp_ns"] = ev.timestamp_ns;
            d["args"] = ev.fixed_args;
            d["var"] = from_span(ev.var_args);
            return d;
        },
        py::arg("data"));

    // File-level drivers.
    m.def(
        "write_keyfile",
        [](const std::string& path, const py::bytes& seed, unsigned tau, std::uint32_t cores,
           std::uint64_t cadence) {
            xlog::KeyFile kf{key_from(seed), tau, cores, cadence};
            xlog::write_keyfile_file(kf, path);
        },
        py::arg("path"), py::arg("seed"), py::arg("tau") = 64, py::arg("cores") = 8,
        py::arg("cadence") = xlog::kDefaultCadence);
    m.def(
        "generate_trace",
        [](const std::string& path, std::uint64_t duration_ms, std::uint32_t cores, double rate,
           const std::string& profile, double dup_rate, std::uint64_t seed) {
            const auto& schema = xlog::SchemaTable::builtin();
            xlog::TraceSpec spec;
            spec.duration_ms = duration_ms;
            spec.n_cores = cores;
            spec.rate_per_sec = rate;
            spec.profile = xlog::load_profile_from_name(profile);
            spec.dup_rate = dup_rate;
            spec.seed = seed;
            const auto events = xlog::generate_events(spec, schema);
            xlog::write_event_trace_file(events, schema, path);
            return events.size();
        },
        py::arg("path"), py::arg("duration_ms") = 1000, py::arg("cores") = 4,
        py::arg("rate") = 2000.0, py::arg("profile") = "constant", py::arg("dup_rate") = 0.0,
        py::arg("seed") = 1);
    m.def(
        "sign_trace",
        [](const std::string& trace_path, const std::string& key_path,
           const std::string& archive_path, bool reduce) {
            const auto& schema = xlog::SchemaTable::builtin();
            const xlog::KeyFile kf = xlog::read_keyfile_file(key_path);
            auto events = xlog::read_event_trace_file(trace_path, schema);
            std::uint64_t dropped = 0;
            if (reduce) {
                std::vector<xlog::Reducer> reducers;
                for (std::uint32_t c = 0; c < kf.n_cores; ++c) {
                    reducers.emplace_back(xlog::WindowMode::dynamic);
                }
                std::vector<xlog::AuditEvent> kept;
                for (const auto& ev : events) {
                    if (ev.core_id >= kf.n_cores) {
                        throw xlog::StructError("event core out of range for this keyfile");
                    }
                    if (reducers[ev.core_id].filter(ev)) {
                        kept.push_back(ev);
                    } else {
                        ++dropped;
                    }
                }
                events = std::move(kept);
            }
            xlog::Pipeline pipeline(kf.master_seed, kf.n_cores, kf.tau, kf.cadence);
            xlog::LogArchive archive;
            archive.tau = kf.tau;
            archive.n_cores = kf.n_cores;
            archive.cadence = kf.cadence;
            archive.schema_hash = schema.hash();
            archive.lines.resize(kf.n_cores);
            for (std::uint32_t c = 0; c < kf.n_cores; ++c) archive.lines[c].core_id = c;
            for (const auto& ev : events) {
                xlog::EncodedRecord rec = xlog::encode(ev, schema);
                if (auto cp = pipeline.ingest(rec)) {
                    archive.lines[rec.core_id].checkpoints.push_back(*cp);
                }
                archive.records.push_back(std::move(rec));
            }
            for (const auto& s : pipeline.finalize()) {
                archive.lines[s.core_id].final_tag = s.final_tag;
                archive.lines[s.core_id].terminal = s.terminal;
            }
            xlog::write_archive_file(archive, archive_path);
            py::dict d;
            d["records"] = archive.records.size();
            d["dropped_by_reducer"] = dropped;
            return d;
        },
        py::arg("trace_path"), py::arg("key_path"), py::arg("archive_path"),
        py::arg("reduce") = false);
    m.def(
        "verify_archive",
        [](const std::string& archive_path, const std::string& key_path) {
            const xlog::KeyFile kf = xlog::read_keyfile_file(key_path);
            const xlog::LogArchive archive = xlog::read_archive_file(archive_path);
            if (archive.tau != kf.tau) {
                throw xlog::StructError("archive tag width does not match keyfile");
            }
            return verdict_dict(xlog::verify(archive.to_audit_input(kf.master_seed)));
        },
        py::arg("archive_path"), py::arg("key_path"));

    // Transport model.
    m.def(
        "simulate_loss",
        [](std::uint64_t s_p, std::uint64_t s_r, std::uint64_t t_p_ms, std::uint64_t t_r_ms,
           std::uint32_t n_cores,
           const std::vector<std::tuple<std::uint64_t, std::uint32_t, std::uint64_t>>& trace) {
            xlog::FlowConfig cfg{s_p, s_r, t_p_ms, t_r_ms, n_cores};
            std::vector<xlog::FlowArrival> arrivals;
            arrivals.reserve(trace.size());
            for (const auto& [t, c, b] : trace) arrivals.push_back({t, c, b});
            const xlog::LossReport r = xlog::simulate(cfg, arrivals);
            py::dict d;
            d["generated"] = r.d_total;
            d["delivered"] = r.delivered;
            d["dropped_core"] = r.dropped_core;
            d["dropped_ring"] = r.dropped_ring;
            d["flushes"] = r.flushes;
            d["p_loss"] = r.p_loss();
            return d;
        },
        py::arg("s_p"), py::arg("s_r"), py::arg("t_p_ms"), py::arg("t_r_ms"), py::arg("n_cores"),
        py::arg("trace"));
    m.def("required_ring_size", &xlog::required_ring_size, py::arg("n_cores"), py::arg("s_p"),
          py::arg("t_p_ms"), py::arg("t_r_ms"));

    // Dedup window.
    m.def("reduction_window", &xlog::reduction_window, py::arg("t0"), py::arg("t1"));

    // Analysis.
    m.def("student_t_quantile", &xlog::student_t_quantile, py::arg("p"), py::arg("dof"));
    m.def(
        "fieller_ci",
        [](const std::vector<double>& xs, const std::vector<double>& ys, double confidence) {
            const xlog::RatioCI ci = xlog::fieller_ci(xs, ys, confidence);
            py::dict d;
            d["rho"] = ci.rho;
            d["lo"] = ci.lo;
            d["hi"] = ci.hi;
            d["confidence"] = ci.confidence;
            d["n"] = ci.n;
            return d;
        },
        py::arg("xs"), py::arg("ys"), py::arg("confidence") = 0.90);
    m.def(
        "factorial_fit",
        [](const std::array<std::vector<double>, 4>& cells) {
            const xlog::FactorialFit f = xlog::factorial_fit(cells);
            py::dict d;
            d["q0"] = f.q0;
            d["qs"] = f.qs;
            d["qb"] = f.qb;
            d["qi"] = f.qi;
            d["f_s"] = f.f_s;
            d["f_b"] = f.f_b;
            d["f_i"] = f.f_i;
            d["f_e"] = f.f_e;
            d["s_e"] = f.s_e;
            d["r"] = f.r;
            return d;
        },
        py::arg("cells"));
}
