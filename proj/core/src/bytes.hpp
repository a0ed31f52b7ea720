#pragma once

// Internal serialization helpers shared by the scheme and storage code.
// Not installed; the public wire formats are documented on the types that
// use them.

#include "dcled/field.hpp"
#include "dcled/poly.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dcled::detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_fe(const Field& f, std::vector<std::uint8_t>& out, Fe v) {
    const auto enc = f.encode(v);
    out.insert(out.end(), enc.begin(), enc.end());
}

struct ByteReader {
    std::span<const std::uint8_t> rest;

    std::uint8_t u8() {
        require(!rest.empty(), "truncated message");
        const std::uint8_t v = rest.front();
        rest = rest.subspan(1);
        return v;
    }

    std::uint32_t u32() {
        require(rest.size() >= 4, "truncated message");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | rest[static_cast<std::size_t>(i)];
        rest = rest.subspan(4);
        return v;
    }

    Fe fe(const Field& f) {
        const std::size_t w = f.byte_width();
        require(rest.size() >= w, "truncated message");
        const Fe v = f.decode(rest.subspan(0, w));
        rest = rest.subspan(w);
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        require(rest.size() >= n, "truncated message");
        const auto out = rest.subspan(0, n);
        rest = rest.subspan(n);
        return out;
    }

    bool empty() const { return rest.empty(); }
};

inline Poly read_poly(const Field& f, ByteReader& r) {
    const std::uint8_t n = r.u8();
    require(n >= 1, "polynomial carries no coefficients");
    Poly p;
    p.c.reserve(n);
    for (unsigned i = 0; i < n; ++i) p.c.push_back(r.fe(f));
    return p;
}

}  // namespace dcled::detail
