#include "xlog/pipeline.hpp"

#include "xlog/errors.hpp"

namespace xlog {

Pipeline::Pipeline(const Key128& master_seed, std::uint32_t n_cores, unsigned tau,
                   std::uint64_t cadence)
    : tau_(tau), cadence_(cadence) {
    if (n_cores == 0) {
        throw ConfigError("pipeline needs at least one line");
    }
    if (cadence == 0) {
        throw ConfigError("checkpoint cadence must be at least 1");
    }
    lines_.reserve(n_cores);
    for (std::uint32_t c = 0; c < n_cores; c++) {
        lines_.push_back(line_init(master_seed, c, n_cores, tau));
    }
    checkpoint_counts_.assign(n_cores, 0);
}

std::optional<Checkpoint> Pipeline::ingest(const EncodedRecord& record) {
    if (record.core_id >= lines_.size()) {
        throw StructError("record routed to core " + std::to_string(record.core_id) +
                          " but the pipeline has " + std::to_string(lines_.size()) + " lines");
    }
    SigningLine& line = lines_[record.core_id];
    bool want_checkpoint = (line.index() + 1) % cadence_ == 0;
    auto cp = line.sign(record.mac_input, want_checkpoint);
    if (cp) {
        checkpoint_counts_[record.core_id] += 1;
    }
    return cp;
}

std::vector<LineSummary> Pipeline::finalize() {
    std::vector<LineSummary> out;
    out.reserve(lines_.size());
    for (std::uint32_t c = 0; c < lines_.size(); c++) {
        LineSummary s;
        s.core_id = c;
        s.record_count = lines_[c].index();
        s.final_tag = lines_[c].tag();
        s.terminal = lines_[c].seal();
        out.push_back(std::move(s));
    }
    return out;
}

const SigningLine& Pipeline::line(std::uint32_t core) const {
    if (core >= lines_.size()) {
        throw StructError("no line " + std::to_string(core));
    }
    return lines_[core];
}

std::uint64_t Pipeline::checkpoints_emitted(std::uint32_t core) const {
    if (core >= checkpoint_counts_.size()) {
        throw StructError("no line " + std::to_string(core));
    }
    return checkpoint_counts_[core];
}

}  // namespace xlog
