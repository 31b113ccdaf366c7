#include "xlog/protocol.hpp"

#include "xlog/combiner.hpp"
#include "xlog/errors.hpp"

namespace xlog {

namespace {

Tag mask_tag(const Key128& full, unsigned tau) {
    auto bytes = full.to_bytes();
    return Tag::from_bytes({bytes.data(), tau / 8}, tau);
}

Tag line_mac(const Key128& key, std::span<const std::uint8_t> message, unsigned tau) {
    // tau = 16 is the statistics-only mode; the MAC itself runs at 64 bits
    // and the tag keeps the leading 16.
    unsigned mac_tau = (tau == kTauMini) ? kTauDefault : tau;
    return chaskey_mac(key, message, 12, mac_tau).truncated(tau);
}

}  // namespace

UpdateResult update(const Key128& state, bool emit_mask, unsigned tau) {
    if (!valid_tau(tau)) {
        throw ConfigError("unsupported tag width " + std::to_string(tau));
    }
    UpdateResult r;
    r.state = prf_f(state, 0);
    r.key = prf_f(state, 1);
    if (emit_mask) {
        r.mask = mask_tag(prf_f(state, 2), tau);
    }
    return r;
}

SigningLine::SigningLine(const Key128& key, const Key128& state, unsigned tau)
    : key_(key), state_(state), tag_(Tag::zero(tau)), tau_(tau) {}

std::optional<Checkpoint> SigningLine::sign(std::span<const std::uint8_t> message,
                                            bool checkpoint) {
    tag_ = combine(tag_, line_mac(key_, message, tau_));
    index_ += 1;

    UpdateResult next = update(state_, checkpoint, tau_);
    key_ = next.key;
    state_ = next.state;

    if (!checkpoint) {
        return std::nullopt;
    }
    return Checkpoint{index_, combine(tag_, *next.mask)};
}

Checkpoint SigningLine::seal() {
    UpdateResult next = update(state_, true, tau_);
    key_ = next.key;
    state_ = next.state;
    return Checkpoint{index_, combine(tag_, *next.mask)};
}

SigningLine line_init(const Key128& master_seed, std::uint32_t core_index, std::uint32_t n_cores,
                      unsigned tau) {
    if (core_index >= n_cores) {
        throw ConfigError("core index " + std::to_string(core_index) + " out of range for " +
                          std::to_string(n_cores) + " lines");
    }
    // 5-byte derivation messages <selector, core_index LE>; length-separated
    // from the 1-byte messages prf_f uses on the same primitive.
    std::uint8_t msg[5];
    store_le32(msg + 1, core_index);

    msg[0] = 0x00;
    Key128 state = Key128::from_bytes(chaskey_mac(master_seed, msg, 12, kTauFull).bytes());
    msg[0] = 0x01;
    Key128 key = Key128::from_bytes(chaskey_mac(master_seed, msg, 12, kTauFull).bytes());

    return SigningLine(key, state, tau);
}

}  // namespace xlog
