#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "xlog/chaskey.hpp"

namespace xlog {

// Stored encrypted tag X_j = T_j xor mask_j for record index j. Without the
// mask stream the value is unlinkable to the raw aggregate, which is what
// closes the truncation attack: a stored checkpoint can never pass as a
// current tag.
struct Checkpoint {
    std::uint64_t index = 0;
    Tag encrypted_tag;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct UpdateResult {
    Key128 key;
    Key128 state;
    std::optional<Tag> mask;
};

// One forward-secure evolution step: new_state = F_S(0), new_key = F_S(1),
// and, when emit_mask is set, mask = the leading tau bits of F_S(2).
// The (key, state) pair does not depend on emit_mask.
UpdateResult update(const Key128& state, bool emit_mask, unsigned tau);

// One per-core signing context: current key K, evolution state S, running
// aggregate tag T, and the count of records signed. Exactly 48 bytes of
// secret per instance (16 each for K, S and the tag backing store).
//
// Single-writer: one execution context signs on a line at a time. Distinct
// lines never share state and may run fully in parallel.
class SigningLine {
  public:
    SigningLine(const Key128& key, const Key128& state, unsigned tau);

    // Folds G(K, message) into the tag, then evolves (K, S) in place; the
    // consumed key and state are overwritten and unrecoverable. Returns the
    // encrypted running tag when checkpoint is set, using the mask from
    // this update step.
    std::optional<Checkpoint> sign(std::span<const std::uint8_t> message, bool checkpoint);

    // Terminal anchor: advances (K, S) one extra step and encrypts the
    // current tag with that step's mask, without signing a record. Gives
    // the auditor a checkpoint at the current index even when the cadence
    // never fired.
    Checkpoint seal();

    const Tag& tag() const { return tag_; }
    std::uint64_t index() const { return index_; }
    unsigned tau() const { return tau_; }

    // Post-evolution values only; no key or state that signed a past record
    // is reachable. These exist because the forward-authenticity game hands
    // exactly this view to the adversary.
    const Key128& current_key() const { return key_; }
    const Key128& current_state() const { return state_; }

  private:
    Key128 key_;
    Key128 state_;
    Tag tag_;
    std::uint64_t index_ = 0;
    unsigned tau_ = 0;
};

// Deterministic per-core derivation from the shared master seed, with the
// core index as domain separator, so server and auditor agree on every
// line's initial (K, S) from one 16-byte secret. Requires core_index < n_cores.
SigningLine line_init(const Key128& master_seed, std::uint32_t core_index, std::uint32_t n_cores,
                      unsigned tau);

}  // namespace xlog
