#pragma once

#include <span>
#include <utility>

#include "dcled/field.hpp"
#include "dcled/prf.hpp"
#include "dcled/program.hpp"

namespace dcled {

/// Two-server scheme: the client masks each value under PRF-derived one-time
/// pads and splits it so that neither server alone sees anything about the
/// data, yet together they can evaluate any quadratic program on it.

struct TwoServerKey {
    PrfKey k;
};

/// Server 1's share of one value: (m - a, a - b).
struct Share1 {
    Fe u, v;
    friend bool operator==(const Share1&, const Share1&) = default;
};
/// Server 2's share of one value: (m - b, a).
struct Share2 {
    Fe w, a;
    friend bool operator==(const Share2&, const Share2&) = default;
};

struct MaskPair {
    Fe a, b;
};

inline TwoServerKey keygen2s() { return {random_prf_key()}; }

/// a = F_k(label, 0), b = F_k(label, 1).
inline MaskPair derive_masks(const Field& f, const PrfKey& k, std::string_view label) {
    return {prf_eval(f, k, label, 0), prf_eval(f, k, label, 1)};
}

/// Deterministic split used by encrypt2s; exposed so tests can drive the
/// scheme with chosen masks. Production callers go through encrypt2s, which
/// derives the masks from the PRF.
inline std::pair<Share1, Share2> split_with_masks(const Field& f, Fe m, Fe a, Fe b) {
    return {Share1{f.sub(m, a), f.sub(a, b)}, Share2{f.sub(m, b), a}};
}

inline std::pair<Share1, Share2> encrypt2s(const Field& f, const TwoServerKey& key,
                                           std::string_view label, Fe m) {
    const MaskPair mask = derive_masks(f, key.k, label);
    return split_with_masks(f, m, mask.a, mask.b);
}

/// C1 = sum alpha_ij (u_i u_j - v_i v_j). Zero for linear programs.
Fe eval1(const Field& f, const QuadraticProgram& p, std::span<const Share1> shares);

/// C2 = sum alpha_ij (a_j w_i + a_i w_j) + sum beta_k w_k.
Fe eval2(const Field& f, const QuadraticProgram& p, std::span<const Share2> shares);

/// m = C1 + C2 + f(b_1..b_n); the b-masks are re-derived from the key.
Fe decrypt2s(const Field& f, const TwoServerKey& key, const QuadraticProgram& p, Fe c1, Fe c2);

/// Fixed-size share encodings: a type tag byte then the two field elements.
std::vector<std::uint8_t> serialize(const Field& f, const Share1& s);
std::vector<std::uint8_t> serialize(const Field& f, const Share2& s);
Share1 parse_share1(const Field& f, std::span<const std::uint8_t> bytes);
Share2 parse_share2(const Field& f, std::span<const std::uint8_t> bytes);

}  // namespace dcled
