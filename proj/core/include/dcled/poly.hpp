#pragma once

#include "dcled/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dcled {

// Dense polynomial over Z_p, constant coefficient first. Arithmetic never
// trims trailing zeros: the coefficient count is part of the representation,
// so callers control the degree bound that goes on the wire.
struct Poly {
    std::vector<Fe> c;
    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_zero(std::size_t coeffs);

// v0 + v1*x
inline Poly poly_line(Fe v0, Fe v1) { return Poly{{v0, v1}}; }

// Result carries max(|a|, |b|) coefficients.
Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);

// Result carries |a| + |b| - 1 coefficients; both inputs must be non-empty.
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);

Poly poly_scale(const Field& f, const Poly& a, Fe s);

// Horner evaluation; the empty polynomial evaluates to 0.
Fe poly_eval(const Field& f, const Poly& a, Fe x);

// Wire form: one count byte, then that many fixed-width coefficients.
void append_poly(const Field& f, const Poly& a, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> serialize(const Field& f, const Poly& a);
Poly parse_poly(const Field& f, std::span<const std::uint8_t> bytes);

}  // namespace dcled
