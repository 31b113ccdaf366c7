#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xlog/auditor.hpp"
#include "xlog/encoder.hpp"
#include "xlog/protocol.hpp"

namespace xlog {

// Deployment secret plus the parameters both sides must agree on. Per-line
// keys and states are derived on demand and never touch the disk.
struct KeyFile {
    Key128 master_seed;
    unsigned tau = 64;
    std::uint32_t n_cores = 8;
    std::uint64_t cadence = 1024;
};

void write_keyfile(const KeyFile& kf, std::ostream& out);
void write_keyfile_file(const KeyFile& kf, const std::string& path);
KeyFile read_keyfile(std::istream& in);
KeyFile read_keyfile_file(const std::string& path);

// Per-line authentication material in the archive: the cadence checkpoints,
// the claimed final tag, and the terminal anchor sealed at flush (its index
// is the line's record count). An attacker may strip the anchor, so it is
// optional on the wire.
struct ArchiveLine {
    std::uint32_t core_id = 0;
    std::vector<Checkpoint> checkpoints;
    Tag final_tag;
    std::optional<Checkpoint> terminal;
};

// On-disk layout (all integers little-endian, tags as tau/8 raw bytes):
//   "XLOG" u32=version u32=tau u32=n_cores u64=cadence u64=schema_hash
//   u64=record_count, then per record: u32 length, u32 core_id, bytes
//   per line: u32 line_id, u64 count, count x (u64 index, tag)
//   per line: u32 line_id, tag final, u8 has_terminal,
//             [u64 terminal_index, tag terminal]
//   "XEND"
struct LogArchive {
    unsigned tau = 64;
    std::uint32_t n_cores = 0;
    std::uint64_t cadence = 0;
    std::uint64_t schema_hash = 0;
    std::vector<EncodedRecord> records;  // multiplexed, in signing order
    std::vector<ArchiveLine> lines;      // one per core, in core order

    // Routes body records to per-line message sequences and pairs them with
    // the line's checkpoints and tags.
    AuditInput to_audit_input(const Key128& master_seed) const;
};

void write_archive(const LogArchive& archive, std::ostream& out);
void write_archive_file(const LogArchive& archive, const std::string& path);
LogArchive read_archive(std::istream& in);
LogArchive read_archive_file(const std::string& path);

}  // namespace xlog
