#include "xlog/auditor.hpp"

#include <algorithm>

#include "xlog/errors.hpp"

namespace xlog {

bool AuditVerdict::intact() const {
    return std::all_of(lines.begin(), lines.end(),
                       [](const LineVerdict& v) { return v.status == LineStatus::intact; });
}

TagReplay recompute_tags(const Key128& master_seed, std::uint32_t core, std::uint32_t n_cores,
                         unsigned tau, std::span<const Bytes> messages) {
    SigningLine line = line_init(master_seed, core, n_cores, tau);
    TagReplay replay;
    replay.encrypted.reserve(messages.size());
    for (const Bytes& m : messages) {
        auto cp = line.sign(m, true);
        replay.encrypted.push_back(cp->encrypted_tag);
    }
    replay.final_tag = line.tag();
    replay.terminal = line.seal();
    return replay;
}

namespace {

LineVerdict verify_line(const AuditInput& input, std::uint32_t core) {
    const LineInput& li = input.lines[core];

    std::uint64_t prev_index = 0;
    for (const Checkpoint& cp : li.checkpoints) {
        if (cp.index == 0 || cp.index <= prev_index) {
            throw InputError("line " + std::to_string(core) +
                             ": checkpoint indices must increase strictly");
        }
        if (cp.encrypted_tag.tau() != input.tau) {
            throw StructError("line " + std::to_string(core) + ": checkpoint tag width " +
                              std::to_string(cp.encrypted_tag.tau()) + " does not match stream " +
                              std::to_string(input.tau));
        }
        prev_index = cp.index;
    }
    if (li.claimed_final.tau() != input.tau) {
        throw StructError("line " + std::to_string(core) + ": final tag width mismatch");
    }

    TagReplay replay =
        recompute_tags(input.master_seed, core, input.n_cores, input.tau, li.messages);
    const std::uint64_t r = li.messages.size();

    LineVerdict v;
    v.record_count = r;
    v.status =
        (replay.final_tag == li.claimed_final) ? LineStatus::intact : LineStatus::tampered;

    for (const Checkpoint& cp : li.checkpoints) {
        if (cp.index > r) {
            continue;  // nothing recomputed at that index
        }
        if (cp.encrypted_tag == replay.encrypted[cp.index - 1]) {
            v.s = std::max(v.s, cp.index);
        } else if (!v.first_mismatch) {
            v.first_mismatch = cp.index;
        }
    }
    if (li.terminal) {
        if (li.terminal->index == r && li.terminal->encrypted_tag == replay.terminal.encrypted_tag) {
            v.s = std::max(v.s, r);
        } else if (!v.first_mismatch || li.terminal->index < *v.first_mismatch) {
            v.first_mismatch = li.terminal->index;
        }
    }
    v.prefix_len = std::min(v.s, r);
    return v;
}

void require_well_formed(const AuditInput& input) {
    if (input.n_cores == 0 || input.lines.size() != input.n_cores) {
        throw StructError("audit input must carry exactly one entry per line");
    }
    if (!valid_tau(input.tau)) {
        throw ConfigError("unsupported tag width " + std::to_string(input.tau));
    }
}

}  // namespace

AuditVerdict verify(const AuditInput& input) {
    require_well_formed(input);
    AuditVerdict verdict;
    verdict.lines.reserve(input.n_cores);
    for (std::uint32_t c = 0; c < input.n_cores; c++) {
        verdict.lines.push_back(verify_line(input, c));
    }
    return verdict;
}

AuditInput attack_truncate(const AuditInput& input, std::uint32_t line, std::uint64_t keep,
                           bool present_checkpoint_as_final) {
    require_well_formed(input);
    if (line >= input.lines.size()) {
        throw InputError("no line " + std::to_string(line));
    }
    AuditInput out = input;
    LineInput& li = out.lines[line];
    if (li.messages.empty()) {
        throw InputError("cannot truncate an empty line");
    }
    if (keep >= li.messages.size()) {
        throw InputError("truncation must remove at least one record");
    }

    li.messages.resize(keep);
    std::erase_if(li.checkpoints, [&](const Checkpoint& cp) { return cp.index > keep; });
    li.terminal.reset();

    if (present_checkpoint_as_final) {
        auto it = std::find_if(li.checkpoints.begin(), li.checkpoints.end(),
                               [&](const Checkpoint& cp) { return cp.index == keep; });
        if (it == li.checkpoints.end()) {
            throw InputError("no stored checkpoint at index " + std::to_string(keep));
        }
        li.claimed_final = it->encrypted_tag;
    }
    return out;
}

AuditInput attack_modify(const AuditInput& input, std::uint32_t line, std::uint64_t record_index,
                         std::size_t byte_index, unsigned bit) {
    require_well_formed(input);
    if (line >= input.lines.size()) {
        throw InputError("no line " + std::to_string(line));
    }
    AuditInput out = input;
    LineInput& li = out.lines[line];
    if (record_index == 0 || record_index > li.messages.size()) {
        throw InputError("record index " + std::to_string(record_index) + " out of range");
    }
    Bytes& msg = li.messages[record_index - 1];
    if (msg.empty() || byte_index >= msg.size() || bit > 7) {
        throw InputError("byte/bit position out of range");
    }
    msg[byte_index] ^= static_cast<std::uint8_t>(1u << bit);
    return out;
}

AuditInput attack_replay(const AuditInput& input, std::uint32_t line, const LineInput& donor) {
    require_well_formed(input);
    if (line >= input.lines.size()) {
        throw InputError("no line " + std::to_string(line));
    }
    if (donor.messages.empty()) {
        throw InputError("donor line is empty");
    }
    AuditInput out = input;
    out.lines[line] = donor;
    return out;
}

}  // namespace xlog
