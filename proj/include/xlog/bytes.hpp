#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xlog {

using Bytes = std::vector<std::uint8_t>;

inline std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint64_t load_le64(const std::uint8_t* p) {
    return static_cast<std::uint64_t>(load_le32(p)) |
           (static_cast<std::uint64_t>(load_le32(p + 4)) << 32);
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
    p[2] = static_cast<std::uint8_t>(v >> 16);
    p[3] = static_cast<std::uint8_t>(v >> 24);
}

inline void store_le64(std::uint8_t* p, std::uint64_t v) {
    store_le32(p, static_cast<std::uint32_t>(v));
    store_le32(p + 4, static_cast<std::uint32_t>(v >> 32));
}

inline void append_le32(Bytes& out, std::uint32_t v) {
    out.resize(out.size() + 4);
    store_le32(out.data() + out.size() - 4, v);
}

inline void append_le64(Bytes& out, std::uint64_t v) {
    out.resize(out.size() + 8);
    store_le64(out.data() + out.size() - 8, v);
}

std::string to_hex(std::span<const std::uint8_t> data);

// Throws ParseError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace xlog
