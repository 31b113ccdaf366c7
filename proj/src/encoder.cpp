#include "xlog/encoder.hpp"

#include <fstream>
#include <sstream>

#include "xlog/chaskey.hpp"
#include "xlog/errors.hpp"

namespace xlog {

namespace {

constexpr std::size_t kP1Base = 16;  // syscall_id(4) + pid(4) + timestamp(8)
constexpr std::size_t kAlign = 16;

constexpr bool valid_width(std::uint8_t w) {
    return w == 1 || w == 2 || w == 4 || w == 8;
}

std::size_t padded_size(std::size_t n) {
    return (n + kAlign - 1) / kAlign * kAlign;
}

std::uint64_t width_max(std::uint8_t w) {
    return w == 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * w)) - 1;
}

}  // namespace

std::size_t SyscallSpec::fixed_size() const {
    std::size_t n = kP1Base;
    for (auto w : arg_widths) n += w;
    return n;
}

void SchemaTable::add(SyscallSpec spec) {
    if (spec.name.empty() || spec.name.find_first_of(" \t\n#") != std::string::npos) {
        throw SchemaError("invalid syscall name '" + spec.name + "'");
    }
    for (auto w : spec.arg_widths) {
        if (!valid_width(w)) {
            throw SchemaError("field width must be 1, 2, 4 or 8, got " + std::to_string(w) +
                              " for " + spec.name);
        }
    }
    if (by_id_.count(spec.id)) {
        throw SchemaError("duplicate syscall id " + std::to_string(spec.id));
    }
    if (by_name_.count(spec.name)) {
        throw SchemaError("duplicate syscall name " + spec.name);
    }
    by_id_[spec.id] = specs_.size();
    by_name_[spec.name] = specs_.size();
    specs_.push_back(std::move(spec));
}

const SyscallSpec* SchemaTable::find(std::uint32_t id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &specs_[it->second];
}

const SyscallSpec* SchemaTable::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : &specs_[it->second];
}

const SchemaTable& SchemaTable::builtin() {
    static const SchemaTable table = [] {
        SchemaTable t;
        // x86-64 syscall numbers; widths follow the natural C argument
        // sizes, with pointers and paths relegated to the variable part.
        t.add({0, "read", {4, 8}});            // fd, count
        t.add({1, "write", {4, 8}});           // fd, count
        t.add({2, "open", {4, 4}});            // flags, mode
        t.add({9, "mmap", {8, 8, 4, 4, 4}});   // addr, len, prot, flags, fd
        t.add({10, "mprotect", {8, 8, 4}});    // addr, len, prot
        t.add({33, "dup2", {4, 4}});           // oldfd, newfd
        t.add({41, "socket", {4, 4, 4}});      // domain, type, protocol
        t.add({42, "connect", {4}});           // fd; sockaddr in var part
        t.add({43, "accept", {4}});            // fd
        t.add({44, "sendto", {4, 8, 4}});      // fd, len, flags
        t.add({45, "recvfrom", {4, 8, 4}});    // fd, len, flags
        t.add({56, "clone", {8}});             // flags
        t.add({58, "vfork", {}});
        t.add({59, "execve", {}});             // path/argv in var part
        t.add({62, "kill", {4, 4}});           // pid, sig
        t.add({76, "truncate", {8}});          // length; path in var part
        t.add({80, "chdir", {}});
        t.add({83, "mkdir", {4}});             // mode
        t.add({85, "creat", {4}});             // mode
        t.add({87, "unlink", {}});
        t.add({90, "chmod", {4}});             // mode
        t.add({101, "ptrace", {4, 4, 8}});     // request, pid, addr
        t.add({105, "setuid", {4}});           // uid
        t.add({231, "exit_group", {4}});       // status
        t.add({257, "openat", {4, 4, 4}});     // dirfd, flags, mode
        t.add({293, "pipe2", {4}});            // flags
        return t;
    }();
    return table;
}

SchemaTable SchemaTable::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty schema file", 0);
    }
    std::istringstream header(line);
    std::string tag;
    unsigned version = 0;
    if (!(header >> tag >> version) || tag != "xlog-schema") {
        throw ParseError("missing 'xlog-schema <version>' header", 0);
    }
    if (version != 1) {
        throw ParseError("unsupported schema version " + std::to_string(version), 0);
    }

    SchemaTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        std::istringstream row(line);
        std::uint32_t id;
        std::string name;
        if (!(row >> id >> name)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("bad schema row on line " + std::to_string(lineno), 0);
        }
        SyscallSpec spec{id, name, {}};
        unsigned w;
        while (row >> w) spec.arg_widths.push_back(static_cast<std::uint8_t>(w));
        if (!row.eof()) {
            throw ParseError("bad field width on line " + std::to_string(lineno), 0);
        }
        t.add(std::move(spec));
    }
    return t;
}

SchemaTable SchemaTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open schema file " + path);
    }
    return load(in);
}

void SchemaTable::save(std::ostream& out) const {
    out << "xlog-schema 1\n";
    for (const auto& s : specs_) {
        out << s.id << ' ' << s.name;
        for (auto w : s.arg_widths) out << ' ' << unsigned(w);
        out << '\n';
    }
}

void SchemaTable::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write schema file " + path);
    }
    save(out);
}

std::uint64_t SchemaTable::hash() const {
    std::ostringstream canonical;
    save(canonical);
    std::string text = canonical.str();
    // Keyed with a fixed public constant: the hash is a format check, not an
    // authenticator.
    static const char kHashKey[17] = "xlog-schema-hash";
    Key128 key = Key128::from_bytes(
        std::span(reinterpret_cast<const std::uint8_t*>(kHashKey), 16));
    Tag t = chaskey_mac(key, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                       text.size()),
                        12, kTauDefault);
    return load_le64(t.bytes().data());
}

EncodedRecord encode(const AuditEvent& event, const SchemaTable& schema) {
    const SyscallSpec* spec = schema.find(event.syscall_id);
    if (!spec) {
        throw SchemaError("unknown syscall id " + std::to_string(event.syscall_id));
    }
    if (event.fixed_args.size() != spec->arg_widths.size()) {
        throw SchemaError(spec->name + " takes " + std::to_string(spec->arg_widths.size()) +
                          " fixed args, got " + std::to_string(event.fixed_args.size()));
    }

    EncodedRecord rec;
    rec.core_id = event.core_id;
    Bytes& out = rec.mac_input;
    out.reserve(padded_size(spec->fixed_size()) + event.var_args.size());

    append_le32(out, event.syscall_id);
    append_le32(out, event.pid);
    append_le64(out, event.timestamp_ns);
    for (std::size_t i = 0; i < event.fixed_args.size(); i++) {
        std::uint8_t w = spec->arg_widths[i];
        std::uint64_t v = event.fixed_args[i];
        if (v > width_max(w)) {
            throw SchemaError(spec->name + " arg " + std::to_string(i) + " value " +
                              std::to_string(v) + " exceeds its " + std::to_string(w) +
                              "-byte field");
        }
        for (unsigned b = 0; b < w; b++) {
            out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
        }
    }
    out.resize(padded_size(out.size()), 0);
    out.insert(out.end(), event.var_args.begin(), event.var_args.end());
    return rec;
}

AuditEvent decode(const EncodedRecord& record, const SchemaTable& schema) {
    const Bytes& in = record.mac_input;
    if (in.size() < 4) {
        throw ParseError("record too short for a syscall id", in.size());
    }
    std::uint32_t syscall_id = load_le32(in.data());
    const SyscallSpec* spec = schema.find(syscall_id);
    if (!spec) {
        throw ParseError("unknown syscall id " + std::to_string(syscall_id), 0);
    }

    const std::size_t fixed = spec->fixed_size();
    const std::size_t padded = padded_size(fixed);
    if (in.size() < padded) {
        throw ParseError("record shorter than the fixed part of " + spec->name, in.size());
    }

    AuditEvent ev;
    ev.syscall_id = syscall_id;
    ev.core_id = record.core_id;
    ev.pid = load_le32(in.data() + 4);
    ev.timestamp_ns = load_le64(in.data() + 8);

    std::size_t off = kP1Base;
    for (auto w : spec->arg_widths) {
        std::uint64_t v = 0;
        for (unsigned b = 0; b < w; b++) {
            v |= static_cast<std::uint64_t>(in[off + b]) << (8 * b);
        }
        ev.fixed_args.push_back(v);
        off += w;
    }
    for (; off < padded; off++) {
        if (in[off] != 0) {
            throw ParseError("nonzero padding byte in " + spec->name + " record", off);
        }
    }
    ev.var_args.assign(in.begin() + static_cast<std::ptrdiff_t>(padded), in.end());
    return ev;
}

}  // namespace xlog
