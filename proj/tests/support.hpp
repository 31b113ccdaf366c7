#pragma once

// Shared helpers for the test suites: deterministic randomness and a
// straight-line restatement of the whole signing line (derivation, MAC
// folding, evolution, checkpoint masking, terminal anchor) built purely on
// the reference Chaskey from chaskey_oracle.hpp. Protocol tests compare the
// library's composition against this replay byte for byte.

#include <cstdint>
#include <random>
#include <vector>

#include "oracles/chaskey_oracle.hpp"

namespace support {

using ByteVec = std::vector<std::uint8_t>;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline ByteVec random_bytes(std::size_t n, std::mt19937_64& rng) {
    ByteVec out(n);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto& b : out) b = static_cast<std::uint8_t>(d(rng));
    return out;
}

inline ByteVec random_message(std::mt19937_64& rng, std::size_t max_len = 64) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    return random_bytes(len(rng), rng);
}

struct OracleCheckpoint {
    std::uint64_t index;
    ByteVec tag;
};

struct OracleLineTrace {
    std::vector<ByteVec> encrypted;  // X_1..X_v
    ByteVec final_tag;               // raw aggregate after v records
    OracleCheckpoint terminal;       // anchor one evolution past record v
};

namespace detail {

inline void words_from(std::uint32_t w[4], const std::uint8_t* b) {
    for (int i = 0; i < 4; i++) w[i] = oracle::ck_read32le(b + 4 * i);
}

}  // namespace detail

// tau-bit stream replay: derive (state, key) from the seed and core index,
// then per record fold the leading tau/8 MAC bytes into the running tag,
// compute the mask from the pre-evolution state, and evolve.
inline OracleLineTrace line_replay(const std::uint8_t seed[16], std::uint32_t core, unsigned tau,
                                   const std::vector<ByteVec>& messages) {
    const std::size_t nb = tau / 8;
    std::uint32_t seed_w[4];
    detail::words_from(seed_w, seed);

    std::uint8_t derive[5];
    derive[1] = static_cast<std::uint8_t>(core);
    derive[2] = static_cast<std::uint8_t>(core >> 8);
    derive[3] = static_cast<std::uint8_t>(core >> 16);
    derive[4] = static_cast<std::uint8_t>(core >> 24);

    derive[0] = 0x00;
    oracle::ChaskeyTag128 st = oracle::chaskey_ref(seed_w, derive, 5, 12);
    derive[0] = 0x01;
    oracle::ChaskeyTag128 ky = oracle::chaskey_ref(seed_w, derive, 5, 12);

    std::uint32_t state_w[4], key_w[4];
    detail::words_from(state_w, st.byte);
    detail::words_from(key_w, ky.byte);

    const std::uint8_t sel0 = 0, sel1 = 1, sel2 = 2;
    OracleLineTrace out;
    out.final_tag.assign(nb, 0);

    for (const ByteVec& m : messages) {
        oracle::ChaskeyTag128 g = oracle::chaskey_ref(key_w, m.data(), m.size(), 12);
        for (std::size_t i = 0; i < nb; i++) out.final_tag[i] ^= g.byte[i];

        oracle::ChaskeyTag128 ns = oracle::chaskey_ref(state_w, &sel0, 1, 12);
        oracle::ChaskeyTag128 nk = oracle::chaskey_ref(state_w, &sel1, 1, 12);
        oracle::ChaskeyTag128 mk = oracle::chaskey_ref(state_w, &sel2, 1, 12);

        ByteVec x(nb);
        for (std::size_t i = 0; i < nb; i++) x[i] = out.final_tag[i] ^ mk.byte[i];
        out.encrypted.push_back(std::move(x));

        detail::words_from(state_w, ns.byte);
        detail::words_from(key_w, nk.byte);
    }

    oracle::ChaskeyTag128 mk = oracle::chaskey_ref(state_w, &sel2, 1, 12);
    out.terminal.index = messages.size();
    out.terminal.tag.resize(nb);
    for (std::size_t i = 0; i < nb; i++) out.terminal.tag[i] = out.final_tag[i] ^ mk.byte[i];
    return out;
}

}  // namespace support
