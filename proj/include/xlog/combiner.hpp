#pragma once

#include <functional>
#include <span>

#include "xlog/bytes.hpp"
#include "xlog/chaskey.hpp"

namespace xlog {

// MAC combiner (G, +) with the XOR instantiation. XOR is commutative,
// self-inverse and has 0^tau as identity, so the inverse operator equals
// the forward one; both names are kept because callers use them in
// different roles (folding vs peeling).

// Requires a.tau == b.tau.
Tag combine(const Tag& a, const Tag& b);

// Returns x with combine(x, y) == z. For XOR this is combine itself.
Tag uncombine(const Tag& z, const Tag& y);

// The per-message MAC G: fresh key, message bytes, tau-bit tag.
using MacFn = std::function<Tag(const Key128&, std::span<const std::uint8_t>)>;

// Production G: Chaskey with the given parameters. tau may also be 16
// (computed as the truncation of the 64-bit tag) for game statistics.
MacFn chaskey_mac_fn(unsigned rounds, unsigned tau);

// Left fold of G(keys[i], messages[i]) starting from 0^tau.
// Requires keys.size() == messages.size().
Tag aggregate(std::span<const Key128> keys, std::span<const Bytes> messages, const MacFn& mac,
              unsigned tau);

}  // namespace xlog
