#include "xlog/chaskey.hpp"

#include <bit>
#include <cstring>

#include "xlog/errors.hpp"

namespace xlog {

Key128 Key128::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != 16) {
        throw StructError("Key128 requires exactly 16 bytes, got " +
                          std::to_string(bytes.size()));
    }
    Words w;
    for (int i = 0; i < 4; i++) {
        w[i] = load_le32(bytes.data() + 4 * i);
    }
    return Key128(w);
}

std::array<std::uint8_t, 16> Key128::to_bytes() const {
    std::array<std::uint8_t, 16> out;
    for (int i = 0; i < 4; i++) {
        store_le32(out.data() + 4 * i, w_[i]);
    }
    return out;
}

Tag Tag::zero(unsigned tau) {
    if (!valid_tau(tau)) {
        throw ConfigError("unsupported tag width " + std::to_string(tau));
    }
    Tag t;
    t.tau_ = tau;
    return t;
}

Tag Tag::from_bytes(std::span<const std::uint8_t> bytes, unsigned tau) {
    Tag t = zero(tau);
    if (bytes.size() != t.size()) {
        throw StructError("tag of width " + std::to_string(tau) + " needs " +
                          std::to_string(t.size()) + " bytes, got " +
                          std::to_string(bytes.size()));
    }
    std::memcpy(t.b_.data(), bytes.data(), bytes.size());
    return t;
}

Tag Tag::truncated(unsigned new_tau) const {
    if (!valid_tau(new_tau) || new_tau > tau_) {
        throw ConfigError("cannot truncate a " + std::to_string(tau_) + "-bit tag to " +
                          std::to_string(new_tau) + " bits");
    }
    Tag t;
    t.tau_ = new_tau;
    std::memcpy(t.b_.data(), b_.data(), t.size());
    return t;
}

std::string Tag::hex() const {
    return to_hex(bytes());
}

namespace {

inline void permute(std::uint32_t v[4], unsigned rounds) {
    for (unsigned i = 0; i < rounds; i++) {
        v[0] += v[1];
        v[1] = std::rotl(v[1], 5);
        v[1] ^= v[0];
        v[0] = std::rotl(v[0], 16);
        v[2] += v[3];
        v[3] = std::rotl(v[3], 8);
        v[3] ^= v[2];
        v[0] += v[3];
        v[3] = std::rotl(v[3], 13);
        v[3] ^= v[0];
        v[2] += v[1];
        v[1] = std::rotl(v[1], 7);
        v[1] ^= v[2];
        v[2] = std::rotl(v[2], 16);
    }
}

// Doubling in GF(2^128), reduction polynomial x^128 + x^7 + x^2 + x + 1.
inline void times_two(std::uint32_t out[4], const std::uint32_t in[4]) {
    out[0] = (in[0] << 1) ^ ((in[3] >> 31) ? 0x87u : 0u);
    out[1] = (in[1] << 1) | (in[0] >> 31);
    out[2] = (in[2] << 1) | (in[1] >> 31);
    out[3] = (in[3] << 1) | (in[2] >> 31);
}

}  // namespace

Tag chaskey_mac(const Key128& key, std::span<const std::uint8_t> message, unsigned rounds,
                unsigned tau) {
    if (rounds != 8 && rounds != 12) {
        throw ConfigError("Chaskey rounds must be 8 or 12, got " + std::to_string(rounds));
    }
    if (tau != kTauDefault && tau != kTauFull) {
        throw ConfigError("MAC tag width must be 64 or 128, got " + std::to_string(tau));
    }

    const std::uint32_t* k = key.words().data();
    std::uint32_t k1[4], k2[4];
    times_two(k1, k);
    times_two(k2, k1);

    std::uint32_t v[4] = {k[0], k[1], k[2], k[3]};

    const std::uint8_t* m = message.data();
    const std::size_t mlen = message.size();

    // All blocks except the last go through the plain absorb-permute loop;
    // the last block is handled below with the k1/k2 finalization.
    const std::size_t lead = (mlen == 0) ? 0 : ((mlen - 1) / 16) * 16;
    for (std::size_t off = 0; off < lead; off += 16) {
        v[0] ^= load_le32(m + off);
        v[1] ^= load_le32(m + off + 4);
        v[2] ^= load_le32(m + off + 8);
        v[3] ^= load_le32(m + off + 12);
        permute(v, rounds);
    }

    const std::size_t remain = mlen % 16;
    std::uint8_t lb[16];
    const std::uint32_t* lastkey;
    const std::uint8_t* lastblock;
    if (mlen != 0 && remain == 0) {
        lastkey = k1;
        lastblock = m + lead;
    } else {
        lastkey = k2;
        std::memset(lb, 0, sizeof(lb));
        if (remain != 0) {
            std::memcpy(lb, m + lead, remain);
        }
        lb[remain] = 0x01;
        lastblock = lb;
    }

    v[0] ^= load_le32(lastblock);
    v[1] ^= load_le32(lastblock + 4);
    v[2] ^= load_le32(lastblock + 8);
    v[3] ^= load_le32(lastblock + 12);

    for (int i = 0; i < 4; i++) v[i] ^= lastkey[i];
    permute(v, rounds);
    for (int i = 0; i < 4; i++) v[i] ^= lastkey[i];

    std::uint8_t out[16];
    for (int i = 0; i < 4; i++) store_le32(out + 4 * i, v[i]);
    return Tag::from_bytes({out, tau / 8}, tau);
}

Key128 prf_f(const Key128& state, int selector) {
    if (selector < 0 || selector > 2) {
        throw ConfigError("PRF selector must be 0, 1 or 2, got " + std::to_string(selector));
    }
    const std::uint8_t msg[1] = {static_cast<std::uint8_t>(selector)};
    Tag t = chaskey_mac(state, msg, 12, kTauFull);
    return Key128::from_bytes(t.bytes());
}

}  // namespace xlog
