#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "xlog/bytes.hpp"

namespace xlog {

// Tag widths accepted across the toolkit. 16 exists only so game-advantage
// statistics are observable in tests; production streams use 64 or 128.
inline constexpr unsigned kTauMini = 16;
inline constexpr unsigned kTauDefault = 64;
inline constexpr unsigned kTauFull = 128;

inline constexpr bool valid_tau(unsigned tau) {
    return tau == kTauMini || tau == kTauDefault || tau == kTauFull;
}

// 128-bit secret, stored as four 32-bit little-endian words (the Chaskey
// lane convention; also the serialized byte order everywhere).
class Key128 {
  public:
    using Words = std::array<std::uint32_t, 4>;

    constexpr Key128() = default;
    explicit constexpr Key128(const Words& w) : w_(w) {}

    // Requires exactly 16 bytes.
    static Key128 from_bytes(std::span<const std::uint8_t> bytes);
    std::array<std::uint8_t, 16> to_bytes() const;

    constexpr const Words& words() const { return w_; }

    friend bool operator==(const Key128&, const Key128&) = default;

  private:
    Words w_{};
};

// A tau-bit tag. Backing storage is a full 16 bytes regardless of tau so a
// signing line's secret footprint is fixed; bytes beyond tau/8 stay zero.
class Tag {
  public:
    Tag() = default;

    static Tag zero(unsigned tau);
    static Tag from_bytes(std::span<const std::uint8_t> bytes, unsigned tau);

    unsigned tau() const { return tau_; }
    std::size_t size() const { return tau_ / 8; }
    std::span<const std::uint8_t> bytes() const { return {b_.data(), size()}; }

    // new_tau must not exceed tau(); keeps the leading bytes.
    Tag truncated(unsigned new_tau) const;

    std::string hex() const;

    friend bool operator==(const Tag&, const Tag&) = default;

  private:
    std::array<std::uint8_t, 16> b_{};
    unsigned tau_ = 0;
};

// Chaskey MAC. rounds must be 8 or 12 (12 is the deployed default), tau 64
// or 128; the 64-bit tag is the leading 8 bytes of the 128-bit one.
Tag chaskey_mac(const Key128& key, std::span<const std::uint8_t> message, unsigned rounds,
                unsigned tau);

// The fixed-domain PRF F used for key/state/mask evolution: Chaskey-12 over
// the single byte <selector>, full 128-bit output. selector must be 0, 1 or 2.
Key128 prf_f(const Key128& state, int selector);

}  // namespace xlog
