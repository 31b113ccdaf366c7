#include "xlog/games.hpp"

#include "xlog/combiner.hpp"
#include "xlog/errors.hpp"

namespace xlog {

Key128 random_key(std::mt19937_64& rng) {
    Key128::Words w;
    for (auto& word : w) {
        word = static_cast<std::uint32_t>(rng());
    }
    return Key128(w);
}

Tag random_tag(unsigned tau, std::mt19937_64& rng) {
    std::array<std::uint8_t, 16> b;
    for (auto& byte : b) {
        byte = static_cast<std::uint8_t>(rng());
    }
    return Tag::from_bytes({b.data(), tau / 8}, tau);
}

Bytes random_bytes(std::size_t n, std::mt19937_64& rng) {
    Bytes out(n);
    for (auto& byte : out) {
        byte = static_cast<std::uint8_t>(rng());
    }
    return out;
}

bool game_forge(ForgeAdversary& adversary, std::size_t q, unsigned tau, std::mt19937_64& rng) {
    std::vector<Bytes> messages = adversary.choose_messages(q, rng);
    if (messages.size() != q) {
        throw ConfigError("forge adversary must choose exactly q messages");
    }

    MacFn mac = chaskey_mac_fn(12, tau);
    std::vector<Key128> keys;
    keys.reserve(q);
    for (std::size_t i = 0; i < q; i++) {
        keys.push_back(random_key(rng));
    }
    Tag aggregate_tag = aggregate(keys, messages, mac, tau);

    ForgeryAttempt attempt = adversary.respond(aggregate_tag, rng);
    if (attempt.messages.size() > q) {
        throw ConfigError("forge adversary returned more than q messages");
    }
    if (attempt.messages == messages) {
        return false;  // unaltered sequence never counts as a forgery
    }

    Tag recomputed = Tag::zero(tau);
    for (std::size_t i = 0; i < attempt.messages.size(); i++) {
        recomputed = combine(recomputed, mac(keys[i], attempt.messages[i]));
    }
    return recomputed == attempt.tag;
}

bool game_fa(FaAdversary& adversary, std::size_t q, unsigned tau, std::mt19937_64& rng) {
    std::vector<Bytes> messages = adversary.choose_messages(q, rng);
    if (messages.size() != q) {
        throw ConfigError("fa adversary must choose exactly q messages");
    }

    const Key128 key0 = random_key(rng);
    const Key128 state0 = random_key(rng);

    SigningLine line(key0, state0, tau);
    FaView view;
    view.encrypted.reserve(q);
    for (const Bytes& m : messages) {
        view.encrypted.push_back(line.sign(m, true)->encrypted_tag);
    }
    view.key = line.current_key();
    view.state = line.current_state();
    view.final_tag = line.tag();

    ForgeryAttempt attempt = adversary.respond(view, rng);
    const std::size_t r = attempt.messages.size();

    if (r >= q && std::equal(messages.begin(), messages.end(), attempt.messages.begin())) {
        return false;  // first q messages intact: not an alteration
    }

    SigningLine replay(key0, state0, tau);
    for (const Bytes& m : attempt.messages) {
        replay.sign(m, false);
    }
    return replay.tag() == attempt.tag;
}

}  // namespace xlog
