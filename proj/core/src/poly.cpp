#include "dcled/poly.hpp"

#include "bytes.hpp"

namespace dcled {

Poly poly_zero(std::size_t coeffs) { return Poly{std::vector<Fe>(coeffs)}; }

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
    Poly r = a.c.size() >= b.c.size() ? a : b;
    const Poly& s = a.c.size() >= b.c.size() ? b : a;
    for (std::size_t i = 0; i < s.c.size(); ++i) r.c[i] = f.add(r.c[i], s.c[i]);
    return r;
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
    Poly r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size());
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.sub(r.c[i], b.c[i]);
    return r;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    detail::require(!a.c.empty() && !b.c.empty(), "cannot multiply an empty polynomial");
    Poly r = poly_zero(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
    return r;
}

Poly poly_scale(const Field& f, const Poly& a, Fe s) {
    Poly r = a;
    for (auto& v : r.c) v = f.mul(v, s);
    return r;
}

Fe poly_eval(const Field& f, const Poly& a, Fe x) {
    Fe acc = f.zero();
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    return acc;
}

void append_poly(const Field& f, const Poly& a, std::vector<std::uint8_t>& out) {
    detail::require(!a.c.empty() && a.c.size() <= 255, "polynomial coefficient count out of range");
    detail::put_u8(out, static_cast<std::uint8_t>(a.c.size()));
    for (const Fe v : a.c) detail::put_fe(f, out, v);
}

std::vector<std::uint8_t> serialize(const Field& f, const Poly& a) {
    std::vector<std::uint8_t> out;
    append_poly(f, a, out);
    return out;
}

Poly parse_poly(const Field& f, std::span<const std::uint8_t> bytes) {
    detail::ByteReader r{bytes};
    Poly p = detail::read_poly(f, r);
    detail::require(r.empty(), "trailing bytes after polynomial");
    return p;
}

}  // namespace dcled
