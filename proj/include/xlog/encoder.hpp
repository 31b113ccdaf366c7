#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xlog/bytes.hpp"

namespace xlog {

// Fixed-argument layout for one syscall: field widths in bytes, in argument
// order. The fixed part of a record is fully determined by the syscall id,
// which is what makes the encoding injective without length prefixes.
struct SyscallSpec {
    std::uint32_t id = 0;
    std::string name;
    std::vector<std::uint8_t> arg_widths;

    std::size_t fixed_size() const;

    friend bool operator==(const SyscallSpec&, const SyscallSpec&) = default;
};

class SchemaTable {
  public:
    // The shipped vocabulary: ~26 syscalls commonly watched by auditors
    // (process control, file access, network, permission changes).
    static const SchemaTable& builtin();

    // Text format: first line "xlog-schema <version>", then one line per
    // syscall: "<id> <name> [width...]", '#' starts a comment.
    static SchemaTable load(std::istream& in);
    static SchemaTable load_file(const std::string& path);
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;

    void add(SyscallSpec spec);

    const SyscallSpec* find(std::uint32_t id) const;
    const SyscallSpec* find(std::string_view name) const;

    const std::vector<SyscallSpec>& specs() const { return specs_; }
    std::size_t size() const { return specs_.size(); }

    // 64-bit digest of the canonical serialization; stored in archive
    // headers so decode-time schema mismatches are detected up front.
    std::uint64_t hash() const;

  private:
    std::vector<SyscallSpec> specs_;
    std::unordered_map<std::uint32_t, std::size_t> by_id_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

struct AuditEvent {
    std::uint32_t syscall_id = 0;
    std::uint32_t pid = 0;
    std::uint64_t timestamp_ns = 0;
    std::uint32_t core_id = 0;
    std::vector<std::uint64_t> fixed_args;
    Bytes var_args;

    friend bool operator==(const AuditEvent&, const AuditEvent&) = default;
};

// mac_input = pad(P1) || P2 where P1 = syscall_id, pid, timestamp and the
// schema-ordered fixed args, zero-padded to a 16-byte multiple, and P2 is
// the variable part, unpadded. core_id travels alongside and is never MACed.
struct EncodedRecord {
    Bytes mac_input;
    std::uint32_t core_id = 0;

    // Bytes this record occupies in the framed wire format.
    std::size_t wire_length() const { return 8 + mac_input.size(); }

    friend bool operator==(const EncodedRecord&, const EncodedRecord&) = default;
};

EncodedRecord encode(const AuditEvent& event, const SchemaTable& schema);

AuditEvent decode(const EncodedRecord& record, const SchemaTable& schema);

}  // namespace xlog
