#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "dcled/field.hpp"

namespace dcled {

/// AES-128 key for the CMAC-based PRF.
struct PrfKey {
    std::array<std::uint8_t, 16> bytes{};
    friend bool operator==(const PrfKey&, const PrfKey&) = default;
};

/// Fresh key from the OS entropy source.
PrfKey random_prf_key();

/// Deterministic key for reproducible tests and benchmarks.
template <class URBG>
PrfKey prf_key_from(URBG& g) {
    static_assert(sizeof(typename URBG::result_type) == 8, "need a 64-bit generator");
    PrfKey k;
    for (std::size_t i = 0; i < k.bytes.size(); i += 8) {
        const u64 w = g();
        for (std::size_t j = 0; j < 8; ++j)
            k.bytes[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
    }
    return k;
}

/// CSPRNG presenting the URBG interface so it can feed Field::sample and
/// friends. Each call draws 8 bytes from the process-wide OpenSSL DRBG.
struct SecureRng {
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();
};

/// Raw AES-128-CMAC (RFC 4493) of an arbitrary message.
std::array<std::uint8_t, 16> aes128_cmac(const std::array<std::uint8_t, 16>& key,
                                         std::span<const std::uint8_t> msg);

/// PRF into Z_p. The MAC input is the 4-byte big-endian label length, the
/// label bytes, then a single index byte; the 16-byte MAC is read as a
/// big-endian integer and reduced mod p. The length prefix keeps distinct
/// (label, index) pairs from colliding under concatenation.
/// Labels are opaque bytes; index must be in [0, 255].
Fe prf_eval(const Field& f, const PrfKey& key, std::string_view label, unsigned index);

}  // namespace dcled
