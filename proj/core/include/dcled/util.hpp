#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcled {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Lowercase hex of a byte range.
std::string hex_encode(std::span<const std::uint8_t> bytes);

/// Inverse of hex_encode. Accepts upper or lower case; throws
/// std::invalid_argument on odd length or non-hex characters.
std::vector<std::uint8_t> hex_decode(std::string_view hex);

/// Decimal rendering of a 128-bit integer.
std::string u128_to_dec(u128 v);

/// Parses a non-negative integer, decimal or 0x-prefixed hex.
/// Throws std::invalid_argument on malformed input or overflow past 128 bits.
u128 parse_u128(std::string_view text);

inline unsigned bit_length(u128 v) {
    unsigned n = 0;
    while (v != 0) {
        ++n;
        v >>= 1;
    }
    return n;
}

}  // namespace dcled
