#include "dcled/scheme2v.hpp"

#include "bytes.hpp"
#include "dcled/scheme2s.hpp"

#include <string>

namespace dcled {

namespace {

constexpr std::uint8_t kTagVShare1 = 0x11;
constexpr std::uint8_t kTagVShare2 = 0x12;

void require_count(const QuadraticProgram& p, std::size_t shares) {
    detail::require(p.labels.size() == shares, "share count does not match program inputs");
}

struct MacPoints {
    std::vector<Fe> r1, r2, r3, r4;
};

MacPoints derive_mac_points(const Field& f, const PrfKey& k2,
                            std::span<const std::string> labels) {
    MacPoints r;
    for (const auto& label : labels) {
        r.r1.push_back(prf_eval(f, k2, label, 0));
        r.r2.push_back(prf_eval(f, k2, label, 1));
        r.r3.push_back(prf_eval(f, k2, label, 2));
        r.r4.push_back(prf_eval(f, k2, label, 3));
    }
    return r;
}

std::vector<std::uint8_t> serialize_tag_pair(const Field& f, std::uint8_t tag, const Poly& first,
                                             const Poly& second) {
    std::vector<std::uint8_t> out;
    detail::put_u8(out, tag);
    append_poly(f, first, out);
    append_poly(f, second, out);
    return out;
}

std::pair<Poly, Poly> parse_tag_pair(const Field& f, std::uint8_t tag,
                                     std::span<const std::uint8_t> bytes, const char* what) {
    detail::ByteReader r{bytes};
    detail::require(r.u8() == tag, what);
    Poly first = detail::read_poly(f, r);
    Poly second = detail::read_poly(f, r);
    detail::require(first.c.size() == 2 && second.c.size() == 2,
                    "fresh tag must be a degree-1 polynomial");
    detail::require(r.empty(), "trailing bytes after share");
    return {std::move(first), std::move(second)};
}

}  // namespace

VerifiableKey vkeygen(const Field& f) {
    SecureRng rng;
    return {random_prf_key(), random_prf_key(), f.sample_nonzero(rng), f.sample_nonzero(rng)};
}

Poly make_tag(const Field& f, Fe payload, Fe r, Fe s) {
    return poly_line(payload, f.mul(f.sub(r, payload), f.inv(s)));
}

std::pair<VShare1, VShare2> vencrypt(const Field& f, const VerifiableKey& key,
                                     std::string_view label, Fe m) {
    const MaskPair mask = derive_masks(f, key.k1, label);
    const Fe r1 = prf_eval(f, key.k2, label, 0);
    const Fe r2 = prf_eval(f, key.k2, label, 1);
    const Fe r3 = prf_eval(f, key.k2, label, 2);
    const Fe r4 = prf_eval(f, key.k2, label, 3);
    VShare1 c1{make_tag(f, f.sub(m, mask.a), r1, key.s1),
               make_tag(f, f.sub(mask.a, mask.b), r2, key.s1)};
    VShare2 c2{make_tag(f, f.sub(m, mask.b), r3, key.s2), make_tag(f, mask.a, r4, key.s2)};
    return {std::move(c1), std::move(c2)};
}

Poly veval1(const Field& f, const QuadraticProgram& p, std::span<const VShare1> shares) {
    require_count(p, shares.size());
    Poly acc = poly_zero(3);
    for (const auto& t : p.quad) {
        const VShare1& si = shares[t.i - 1];
        const VShare1& sj = shares[t.j - 1];
        const Poly prod = poly_sub(f, poly_mul(f, si.y1, sj.y1), poly_mul(f, si.y2, sj.y2));
        acc = poly_add(f, acc, poly_scale(f, prod, t.alpha));
    }
    return acc;
}

Poly veval2(const Field& f, const QuadraticProgram& p, std::span<const VShare2> shares) {
    require_count(p, shares.size());
    Poly acc = poly_zero(3);
    for (const auto& t : p.quad) {
        const VShare2& si = shares[t.i - 1];
        const VShare2& sj = shares[t.j - 1];
        const Poly cross = poly_add(f, poly_mul(f, si.y3, sj.y4), poly_mul(f, si.y4, sj.y3));
        acc = poly_add(f, acc, poly_scale(f, cross, t.alpha));
    }
    for (const auto& t : p.lin)
        acc = poly_add(f, acc, poly_scale(f, shares[t.k - 1].y3, t.beta));
    return acc;
}

VerifyOutcome vdecrypt(const Field& f, const VerifiableKey& key, const QuadraticProgram& p,
                       const Poly& c1, const Poly& c2) {
    detail::require(c1.c.size() == 3 && c2.c.size() == 3,
                    "evaluated tag must carry exactly 3 coefficients");
    const MacPoints r = derive_mac_points(f, key.k2, p.labels);
    Fe exp1 = f.zero();
    Fe exp2 = f.zero();
    for (const auto& t : p.quad) {
        const std::size_t i = t.i - 1;
        const std::size_t j = t.j - 1;
        exp1 = f.add(exp1,
                     f.mul(t.alpha, f.sub(f.mul(r.r1[i], r.r1[j]), f.mul(r.r2[i], r.r2[j]))));
        exp2 = f.add(exp2,
                     f.mul(t.alpha, f.add(f.mul(r.r3[i], r.r4[j]), f.mul(r.r4[i], r.r3[j]))));
    }
    for (const auto& t : p.lin) exp2 = f.add(exp2, f.mul(t.beta, r.r3[t.k - 1]));

    VerifyOutcome out;
    out.ok1 = poly_eval(f, c1, key.s1) == exp1;
    out.ok2 = poly_eval(f, c2, key.s2) == exp2;
    if (out.accepted()) {
        std::vector<Fe> b(p.labels.size());
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = prf_eval(f, key.k1, p.labels[i], 1);
        out.value = f.add(f.add(c1.c[0], c2.c[0]), eval_plain(f, p, b));
    }
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const VShare1& s) {
    return serialize_tag_pair(f, kTagVShare1, s.y1, s.y2);
}

std::vector<std::uint8_t> serialize(const Field& f, const VShare2& s) {
    return serialize_tag_pair(f, kTagVShare2, s.y3, s.y4);
}

VShare1 parse_vshare1(const Field& f, std::span<const std::uint8_t> bytes) {
    auto [a, b] = parse_tag_pair(f, kTagVShare1, bytes, "not a first-server verifiable share");
    return {std::move(a), std::move(b)};
}

VShare2 parse_vshare2(const Field& f, std::span<const std::uint8_t> bytes) {
    auto [a, b] = parse_tag_pair(f, kTagVShare2, bytes, "not a second-server verifiable share");
    return {std::move(a), std::move(b)};
}

}  // namespace dcled
