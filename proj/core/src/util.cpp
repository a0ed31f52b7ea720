#include "dcled/util.hpp"

#include <stdexcept>

namespace dcled {

namespace {

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string hex_encode(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<std::uint8_t> hex_decode(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_val(hex[2 * i]);
        const int lo = hex_val(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

std::string u128_to_dec(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

u128 parse_u128(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    u128 v = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        for (char c : text.substr(2)) {
            const int d = hex_val(c);
            if (d < 0) throw std::invalid_argument("invalid hex digit");
            if (v >> 124) throw std::invalid_argument("integer literal overflows 128 bits");
            v = v << 4 | static_cast<unsigned>(d);
        }
        return v;
    }
    constexpr u128 max = ~u128{0};
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("invalid decimal digit");
        const unsigned d = static_cast<unsigned>(c - '0');
        if (v > (max - d) / 10) throw std::invalid_argument("integer literal overflows 128 bits");
        v = v * 10 + d;
    }
    return v;
}

}  // namespace dcled
