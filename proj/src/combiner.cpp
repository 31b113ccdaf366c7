#include "xlog/combiner.hpp"

#include "xlog/errors.hpp"

namespace xlog {

Tag combine(const Tag& a, const Tag& b) {
    if (a.tau() != b.tau()) {
        throw StructError("cannot combine tags of width " + std::to_string(a.tau()) + " and " +
                          std::to_string(b.tau()));
    }
    std::array<std::uint8_t, 16> out{};
    auto ab = a.bytes();
    auto bb = b.bytes();
    for (std::size_t i = 0; i < ab.size(); i++) {
        out[i] = ab[i] ^ bb[i];
    }
    return Tag::from_bytes({out.data(), ab.size()}, a.tau());
}

Tag uncombine(const Tag& z, const Tag& y) {
    return combine(z, y);
}

MacFn chaskey_mac_fn(unsigned rounds, unsigned tau) {
    if (!valid_tau(tau)) {
        throw ConfigError("unsupported tag width " + std::to_string(tau));
    }
    if (tau == kTauMini) {
        return [rounds](const Key128& k, std::span<const std::uint8_t> m) {
            return chaskey_mac(k, m, rounds, kTauDefault).truncated(kTauMini);
        };
    }
    return [rounds, tau](const Key128& k, std::span<const std::uint8_t> m) {
        return chaskey_mac(k, m, rounds, tau);
    };
}

Tag aggregate(std::span<const Key128> keys, std::span<const Bytes> messages, const MacFn& mac,
              unsigned tau) {
    if (keys.size() != messages.size()) {
        throw StructError("aggregate needs equally many keys and messages, got " +
                          std::to_string(keys.size()) + " and " +
                          std::to_string(messages.size()));
    }
    Tag t = Tag::zero(tau);
    for (std::size_t i = 0; i < keys.size(); i++) {
        t = combine(t, mac(keys[i], messages[i]));
    }
    return t;
}

}  // namespace xlog
