#pragma once

#include "dcled/field.hpp"
#include "dcled/poly.hpp"
#include "dcled/prf.hpp"
#include "dcled/program.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace dcled {

// Verifiable two-server key. k1 seeds the additive masks (exactly as in the
// unverified scheme), k2 seeds the per-label MAC values, and s1/s2 are the
// client's secret MAC evaluation points, one per server. Both are nonzero:
// encryption divides by them.
struct VerifiableKey {
    PrfKey k1;
    PrfKey k2;
    Fe s1;
    Fe s2;
};

// Fresh per-label tags, each a degree-1 polynomial through (0, payload) and
// (s_i, r). VShare1 authenticates the pair (m - a, a - b) under s1; VShare2
// authenticates (m - b, a) under s2.
struct VShare1 {
    Poly y1, y2;
    friend bool operator==(const VShare1&, const VShare1&) = default;
};
struct VShare2 {
    Poly y3, y4;
    friend bool operator==(const VShare2&, const VShare2&) = default;
};

// Outcome of verified decryption. The per-equation flags identify which
// server's response failed; callers that only care about accept/reject use
// accepted(). `value` is meaningful only when accepted().
struct VerifyOutcome {
    bool ok1 = false;
    bool ok2 = false;
    Fe value{};
    bool accepted() const { return ok1 && ok2; }
};

VerifiableKey vkeygen(const Field& f);

// Degree-1 polynomial with tag(0) = payload and tag(s) = r.
Poly make_tag(const Field& f, Fe payload, Fe r, Fe s);

std::pair<VShare1, VShare2> vencrypt(const Field& f, const VerifiableKey& key,
                                     std::string_view label, Fe m);

// Tag-polynomial mirrors of the two server evaluations. The result always
// carries exactly 3 coefficients, and its value at 0 equals the unverified
// evaluation on the tag payloads.
Poly veval1(const Field& f, const QuadraticProgram& p, std::span<const VShare1> shares);
Poly veval2(const Field& f, const QuadraticProgram& p, std::span<const VShare2> shares);

// Recomputes the expected MAC values from k2 and checks c1(s1) and c2(s2)
// against them; on acceptance the result is c1(0) + c2(0) + f(b-vector).
// Both polynomials must carry exactly 3 coefficients.
VerifyOutcome vdecrypt(const Field& f, const VerifiableKey& key, const QuadraticProgram& p,
                       const Poly& c1, const Poly& c2);

std::vector<std::uint8_t> serialize(const Field& f, const VShare1& s);
std::vector<std::uint8_t> serialize(const Field& f, const VShare2& s);
VShare1 parse_vshare1(const Field& f, std::span<const std::uint8_t> bytes);
VShare2 parse_vshare2(const Field& f, std::span<const std::uint8_t> bytes);

}  // namespace dcled
