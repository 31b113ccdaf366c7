#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xlog/encoder.hpp"
#include "xlog/protocol.hpp"

namespace xlog {

inline constexpr std::uint64_t kDefaultCadence = 1024;

// What finalize hands over per line: how many records the line signed, the
// raw aggregate tag at that point, and the terminal encrypted anchor from
// one extra evolution step.
struct LineSummary {
    std::uint32_t core_id = 0;
    std::uint64_t record_count = 0;
    Tag final_tag;
    Checkpoint terminal;
};

// N independent signing lines plus the checkpoint cadence policy. A record
// with core_id c is signed by line c and by no other; total secret material
// is 48*N bytes.
//
// ingest calls for distinct core_ids may run concurrently (each touches
// only its own line); two ingests on the same line must be serialized by
// the caller.
class Pipeline {
  public:
    Pipeline(const Key128& master_seed, std::uint32_t n_cores, unsigned tau,
             std::uint64_t cadence = kDefaultCadence);

    // Signs on the record's line; emits a checkpoint every cadence records.
    std::optional<Checkpoint> ingest(const EncodedRecord& record);

    // Seals every line: emits the terminal anchor and the final tag per
    // line. Lines stay usable; a later finalize yields fresh anchors.
    std::vector<LineSummary> finalize();

    const SigningLine& line(std::uint32_t core) const;
    std::uint32_t n_cores() const { return static_cast<std::uint32_t>(lines_.size()); }
    unsigned tau() const { return tau_; }
    std::uint64_t cadence() const { return cadence_; }
    std::uint64_t checkpoints_emitted(std::uint32_t core) const;

  private:
    std::vector<SigningLine> lines_;
    std::vector<std::uint64_t> checkpoint_counts_;
    unsigned tau_;
    std::uint64_t cadence_;
};

}  // namespace xlog
