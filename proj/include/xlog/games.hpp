#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "xlog/bytes.hpp"
#include "xlog/chaskey.hpp"
#include "xlog/protocol.hpp"

namespace xlog {

Key128 random_key(std::mt19937_64& rng);
Tag random_tag(unsigned tau, std::mt19937_64& rng);
Bytes random_bytes(std::size_t n, std::mt19937_64& rng);

// Adversary output in both games: an alternative message sequence and the
// tag claimed to authenticate it.
struct ForgeryAttempt {
    std::vector<Bytes> messages;
    Tag tag;
};

// Combiner unforgeability game. The challenger samples one fresh random key
// per message, folds the per-message MACs into an aggregate, and shows the
// adversary only that aggregate. The adversary returns up to q messages
// plus a tag; it wins if its sequence differs from the original and its tag
// equals the fold of the same keys over its sequence.
class ForgeAdversary {
  public:
    virtual ~ForgeAdversary() = default;
    virtual std::vector<Bytes> choose_messages(std::size_t q, std::mt19937_64& rng) = 0;
    virtual ForgeryAttempt respond(const Tag& aggregate, std::mt19937_64& rng) = 0;
};

bool game_forge(ForgeAdversary& adversary, std::size_t q, unsigned tau, std::mt19937_64& rng);

// What the forward-authenticity adversary is handed after the run: the
// *current* key and state (all past ones are gone), every encrypted
// checkpoint, and the final aggregate tag.
struct FaView {
    Key128 key;
    Key128 state;
    std::vector<Tag> encrypted;
    Tag final_tag;
};

class FaAdversary {
  public:
    virtual ~FaAdversary() = default;
    virtual std::vector<Bytes> choose_messages(std::size_t q, std::mt19937_64& rng) = 0;
    virtual ForgeryAttempt respond(const FaView& view, std::mt19937_64& rng) = 0;
};

// Forward-authenticity game over one signing line with a random initial
// (key, state). Returning at least q messages whose first q equal the
// originals is not an alteration and loses outright; otherwise the
// adversary wins iff recomputing its sequence from the initial state
// reproduces its claimed tag.
bool game_fa(FaAdversary& adversary, std::size_t q, unsigned tau, std::mt19937_64& rng);

}  // namespace xlog
