#include "xlog/archive.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "xlog/bytes.hpp"
#include "xlog/errors.hpp"

namespace xlog {
namespace {

constexpr char kKeyMagic[4] = {'X', 'K', 'E', 'Y'};
constexpr char kLogMagic[4] = {'X', 'L', 'O', 'G'};
constexpr char kEndMagic[4] = {'X', 'E', 'N', 'D'};
constexpr std::uint32_t kFormatVersion = 1;

// Bounds rejected before any allocation sized from the wire, so a corrupt
// count cannot OOM the reader.
constexpr std::uint64_t kMaxRecords = std::uint64_t{1} << 32;
constexpr std::uint32_t kMaxRecordLength = 1u << 24;
constexpr std::uint64_t kMaxCheckpoints = std::uint64_t{1} << 32;
constexpr std::uint32_t kMaxCores = 1u << 16;

class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void bytes(const void* p, std::size_t n) {
        out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) {
        std::uint8_t b[4];
        store_le32(b, v);
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        std::uint8_t b[8];
        store_le64(b, v);
        bytes(b, 8);
    }
    void tag(const Tag& t) { bytes(t.bytes().data(), t.bytes().size()); }

  private:
    std::ostream& out_;
};

class Reader {
  public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::size_t offset() const { return offset_; }

    void bytes(void* p, std::size_t n, const char* what) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            throw ParseError(std::string("truncated while reading ") + what, offset_);
        }
        offset_ += n;
    }
    std::uint8_t u8(const char* what) {
        std::uint8_t v;
        bytes(&v, 1, what);
        return v;
    }
    std::uint32_t u32(const char* what) {
        std::uint8_t b[4];
        bytes(b, 4, what);
        return load_le32(b);
    }
    std::uint64_t u64(const char* what) {
        std::uint8_t b[8];
        bytes(b, 8, what);
        return load_le64(b);
    }
    Tag tag(unsigned tau, const char* what) {
        Bytes raw(tau / 8);
        bytes(raw.data(), raw.size(), what);
        return Tag::from_bytes(raw, tau);
    }
    void magic(const char expect[4], const char* what) {
        char got[4];
        const std::size_t at = offset_;
        bytes(got, 4, what);
        if (!std::equal(got, got + 4, expect)) {
            throw ParseError(std::string("bad magic for ") + what, at);
        }
    }
    void expect_eof(const char* what) {
        if (in_.peek() != std::char_traits<char>::eof()) {
            throw ParseError(std::string("trailing data after ") + what, offset_);
        }
    }

  private:
    std::istream& in_;
    std::size_t offset_ = 0;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open for reading: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path);
    return out;
}

void check_params(unsigned tau, std::uint32_t n_cores, std::uint64_t cadence,
                  std::size_t at) {
    if (!valid_tau(tau)) throw ParseError("unsupported tag width", at);
    if (n_cores == 0 || n_cores > kMaxCores) throw ParseError("core count out of range", at);
    if (cadence == 0) throw ParseError("checkpoint cadence must be positive", at);
}

}  // namespace

void write_keyfile(const KeyFile& kf, std::ostream& out) {
    if (!valid_tau(kf.tau)) throw ConfigError("unsupported tag width");
    if (kf.n_cores == 0 || kf.cadence == 0) throw ConfigError("cores and cadence must be positive");
    Writer w(out);
    w.bytes(kKeyMagic, 4);
    w.u32(kFormatVersion);
    w.u32(kf.tau);
    w.u32(kf.n_cores);
    w.u64(kf.cadence);
    const auto seed = kf.master_seed.to_bytes();
    w.bytes(seed.data(), seed.size());
    if (!out) throw InputError("write failed for key material");
}

void write_keyfile_file(const KeyFile& kf, const std::string& path) {
    auto out = open_out(path);
    write_keyfile(kf, out);
}

KeyFile read_keyfile(std::istream& in) {
    Reader r(in);
    r.magic(kKeyMagic, "key header");
    const std::size_t ver_at = r.offset();
    const std::uint32_t version = r.u32("key version");
    if (version != kFormatVersion) throw ParseError("unsupported key version", ver_at);
    KeyFile kf;
    const std::size_t params_at = r.offset();
    kf.tau = r.u32("tag width");
    kf.n_cores = r.u32("core count");
    kf.cadence = r.u64("cadence");
    check_params(kf.tau, kf.n_cores, kf.cadence, params_at);
    std::uint8_t seed[16];
    r.bytes(seed, 16, "master seed");
    kf.master_seed = Key128::from_bytes(seed);
    r.expect_eof("key material");
    return kf;
}

KeyFile read_keyfile_file(const std::string& path) {
    auto in = open_in(path);
    return read_keyfile(in);
}

void write_archive(const LogArchive& archive, std::ostream& out) {
    if (!valid_tau(archive.tau)) throw ConfigError("unsupported tag width");
    if (archive.lines.size() != archive.n_cores) {
        throw ConfigError("archive must carry one line per core");
    }
    Writer w(out);
    w.bytes(kLogMagic, 4);
    w.u32(kFormatVersion);
    w.u32(archive.tau);
    w.u32(archive.n_cores);
    w.u64(archive.cadence);
    w.u64(archive.schema_hash);
    w.u64(archive.records.size());
    for (const auto& rec : archive.records) {
        if (rec.mac_input.size() > kMaxRecordLength) throw ConfigError("record too large");
        w.u32(static_cast<std::uint32_t>(rec.mac_input.size()));
        w.u32(rec.core_id);
        w.bytes(rec.mac_input.data(), rec.mac_input.size());
    }
    for (const auto& line : archive.lines) {
        w.u32(line.core_id);
        w.u64(line.checkpoints.size());
        for (const auto& cp : line.checkpoints) {
            w.u64(cp.index);
            w.tag(cp.encrypted_tag);
        }
    }
    for (const auto& line : archive.lines) {
        w.u32(line.core_id);
        w.tag(line.final_tag);
        w.u8(line.terminal ? 1 : 0);
        if (line.terminal) {
            w.u64(line.terminal->index);
            w.tag(line.terminal->encrypted_tag);
        }
    }
    w.bytes(kEndMagic, 4);
    if (!out) throw InputError("write failed for archive");
}

void write_archive_file(const LogArchive& archive, const std::string& path) {
    auto out = open_out(path);
    write_archive(archive, out);
}

LogArchive read_archive(std::istream& in) {
    Reader r(in);
    r.magic(kLogMagic, "archive header");
    const std::size_t ver_at = r.offset();
    const std::uint32_t version = r.u32("archive version");
    if (version != kFormatVersion) throw ParseError("unsupported archive version", ver_at);

    LogArchive a;
    const std::size_t params_at = r.offset();
    a.tau = r.u32("tag width");
    a.n_cores = r.u32("core count");
    a.cadence = r.u64("cadence");
    check_params(a.tau, a.n_cores, a.cadence, params_at);
    a.schema_hash = r.u64("schema hash");

    const std::size_t count_at = r.offset();
    const std::uint64_t n_records = r.u64("record count");
    if (n_records > kMaxRecords) throw ParseError("record count out of range", count_at);
    a.records.reserve(static_cast<std::size_t>(n_records));
    for (std::uint64_t i = 0; i < n_records; ++i) {
        const std::size_t len_at = r.offset();
        const std::uint32_t len = r.u32("record length");
        if (len > kMaxRecordLength) throw ParseError("record length out of range", len_at);
        EncodedRecord rec;
        const std::size_t core_at = r.offset();
        rec.core_id = r.u32("record core");
        if (rec.core_id >= a.n_cores) throw ParseError("record core out of range", core_at);
        rec.mac_input.resize(len);
        r.bytes(rec.mac_input.data(), len, "record body");
        a.records.push_back(std::move(rec));
    }

    a.lines.resize(a.n_cores);
    for (std::uint32_t i = 0; i < a.n_cores; ++i) {
        const std::size_t id_at = r.offset();
        const std::uint32_t line_id = r.u32("checkpoint line id");
        if (line_id != i) throw ParseError("checkpoint lines out of order", id_at);
        auto& line = a.lines[i];
        line.core_id = line_id;
        const std::size_t cp_at = r.offset();
        const std::uint64_t n_cp = r.u64("checkpoint count");
        if (n_cp > kMaxCheckpoints) throw ParseError("checkpoint count out of range", cp_at);
        line.checkpoints.reserve(static_cast<std::size_t>(n_cp));
        for (std::uint64_t k = 0; k < n_cp; ++k) {
            Checkpoint cp;
            cp.index = r.u64("checkpoint index");
            cp.encrypted_tag = r.tag(a.tau, "checkpoint tag");
            line.checkpoints.push_back(cp);
        }
    }

    for (std::uint32_t i = 0; i < a.n_cores; ++i) {
        const std::size_t id_at = r.offset();
        const std::uint32_t line_id = r.u32("trailer line id");
        if (line_id != i) throw ParseError("trailer lines out of order", id_at);
        auto& line = a.lines[i];
        line.final_tag = r.tag(a.tau, "final tag");
        const std::size_t flag_at = r.offset();
        const std::uint8_t has_terminal = r.u8("terminal flag");
        if (has_terminal > 1) throw ParseError("terminal flag must be 0 or 1", flag_at);
        if (has_terminal) {
            Checkpoint t;
            t.index = r.u64("terminal index");
            t.encrypted_tag = r.tag(a.tau, "terminal tag");
            line.terminal = t;
        }
    }

    r.magic(kEndMagic, "archive trailer");
    r.expect_eof("archive");
    return a;
}

LogArchive read_archive_file(const std::string& path) {
    auto in = open_in(path);
    return read_archive(in);
}

AuditInput LogArchive::to_audit_input(const Key128& master_seed) const {
    if (lines.size() != n_cores) throw StructError("archive must carry one line per core");
    AuditInput input;
    input.master_seed = master_seed;
    input.n_cores = n_cores;
    input.tau = tau;
    input.cadence = cadence;
    input.lines.resize(n_cores);
    for (std::uint32_t i = 0; i < n_cores; ++i) {
        const auto& src = lines[i];
        if (src.core_id != i) throw StructError("archive lines out of order");
        auto& dst = input.lines[i];
        dst.checkpoints = src.checkpoints;
        dst.terminal = src.terminal;
        dst.claimed_final = src.final_tag;
    }
    for (const auto& rec : records) {
        if (rec.core_id >= n_cores) throw StructError("record core out of range");
        input.lines[rec.core_id].messages.push_back(rec.mac_input);
    }
    return input;
}

}  // namespace xlog
