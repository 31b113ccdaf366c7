#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xlog/bytes.hpp"
#include "xlog/protocol.hpp"

namespace xlog {

// One line's worth of material as handed to the auditor: the claimed
// message sequence, the stored checkpoints (sorted by index), the terminal
// anchor from the flush, and the claimed final aggregate tag.
struct LineInput {
    std::vector<Bytes> messages;
    std::vector<Checkpoint> checkpoints;
    std::optional<Checkpoint> terminal;
    Tag claimed_final;
};

struct AuditInput {
    Key128 master_seed;
    std::uint32_t n_cores = 0;
    unsigned tau = 0;
    std::uint64_t cadence = 0;
    std::vector<LineInput> lines;  // one entry per core, in core order
};

enum class LineStatus { intact, tampered };

struct LineVerdict {
    LineStatus status = LineStatus::tampered;
    std::uint64_t record_count = 0;
    // Largest index whose stored encrypted tag matches the recomputation
    // (the terminal anchor counts at index record_count); 0 if none.
    std::uint64_t s = 0;
    // Records [1..prefix_len] are guaranteed unmodified; min(s, record_count).
    std::uint64_t prefix_len = 0;
    // Smallest stored index whose encrypted tag failed to match, if any.
    std::optional<std::uint64_t> first_mismatch;
};

struct AuditVerdict {
    std::vector<LineVerdict> lines;

    bool intact() const;
};

// Exact replay of one line from the shared seed: per-record encrypted tags
// X*_1..X*_v, the final aggregate T*, and the terminal anchor one update
// past the last record.
struct TagReplay {
    std::vector<Tag> encrypted;
    Tag final_tag;
    Checkpoint terminal;
};

TagReplay recompute_tags(const Key128& master_seed, std::uint32_t core, std::uint32_t n_cores,
                         unsigned tau, std::span<const Bytes> messages);

// Per-line: intact iff the recomputed final tag equals the claimed one;
// prefix extraction compares stored encrypted checkpoints against the
// recomputed stream. Checkpoints must arrive sorted with strictly
// increasing indices (input error otherwise). Verdicts for one line are
// independent of every other line's data.
AuditVerdict verify(const AuditInput& input);

// Deterministic tamper fixtures. Each returns a mutated copy.

// Keeps the first `keep` records of one line (keep < current count),
// drops later checkpoints and the terminal anchor. With
// present_checkpoint_as_final, the stored checkpoint at index `keep`
// replaces the claimed final tag (requires one checkpointed at exactly
// that index).
AuditInput attack_truncate(const AuditInput& input, std::uint32_t line, std::uint64_t keep,
                           bool present_checkpoint_as_final = false);

// Flips one bit of one record: record_index is 1-based, byte_index into
// that record's bytes, bit 0..7.
AuditInput attack_modify(const AuditInput& input, std::uint32_t line,
                         std::uint64_t record_index, std::size_t byte_index, unsigned bit);

// Splices one line captured from another stream (e.g. an earlier key
// epoch) in place of the target's line.
AuditInput attack_replay(const AuditInput& input, std::uint32_t line, const LineInput& donor);

}  // namespace xlog
