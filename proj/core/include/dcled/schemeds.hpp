#pragma once

#include "dcled/field.hpp"
#include "dcled/poly.hpp"
#include "dcled/prf.hpp"

#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcled {

// The d-server scheme splits a product m_1 * ... * m_d across d servers.
// Server j stores, for each row i, the masks a_{i,k} for every column
// k != j and the masked value m_i - a_{i,j} in its own column. Cost grows
// with binomial sums over rows, so d is capped.
inline constexpr std::uint32_t kMaxServers = 8;

// One label's d entries as held by one server; the owning column is masked.
struct ShareRow {
    std::vector<Fe> entries;
    friend bool operator==(const ShareRow&, const ShareRow&) = default;
};

// Server j's full view: one row per input, in program order.
struct ShareMatrix {
    std::uint32_t server = 0;  // 1-based owning column
    std::vector<ShareRow> rows;
    friend bool operator==(const ShareMatrix&, const ShareMatrix&) = default;
};

template <class R>
concept Ring = requires(const R r, const typename R::value_type& x) {
    { r.zero() } -> std::same_as<typename R::value_type>;
    { r.one() } -> std::same_as<typename R::value_type>;
    { r.add(x, x) } -> std::same_as<typename R::value_type>;
    { r.mul(x, x) } -> std::same_as<typename R::value_type>;
    { r.neg(x) } -> std::same_as<typename R::value_type>;
};

// Server j's contribution over any commutative ring.
//
// entries is row-major d x d with column `server` masked. The cascade
// coefficient of a row subset t is defined by the cancellation identity
//
//   c(t) = -sum over proper subsets u of t of c(u) * prod_{i in t\u} (-e(i, |u|+1))
//
// with c(empty) = 1, and the result is
//
//   S_j = sum over row subsets t of size j-1 of c(t) * prod_{i not in t} e(i, j).
//
// Summing S_j over all servers then telescopes every mixed monomial away,
// leaving the full product plus a message-independent constant. Running the
// same formula over a polynomial ring yields the MAC-tag mirror, and over a
// symbolic ring the cancellation is directly observable; both instantiations
// are exercised by the tests.
template <Ring R>
typename R::value_type cascade_sum(const R& ring, std::uint32_t server, std::uint32_t d,
                                   std::span<const typename R::value_type> entries) {
    using T = typename R::value_type;
    if (d < 2 || d > kMaxServers) throw std::invalid_argument("server count out of range");
    if (server < 1 || server > d) throw std::invalid_argument("server index out of range");
    if (entries.size() != std::size_t{d} * d)
        throw std::invalid_argument("share matrix is not d x d");
    const auto at = [&](unsigned row, unsigned col1) -> const T& {
        return entries[std::size_t{row} * d + (col1 - 1)];
    };

    const std::uint32_t top = 1u << d;
    std::vector<T> c(top, ring.zero());
    c[0] = ring.one();
    for (std::uint32_t t = 1; t < top; ++t) {
        const unsigned size = static_cast<unsigned>(std::popcount(t));
        if (size > server - 1) continue;
        T sum = ring.zero();
        for (std::uint32_t u = (t - 1) & t;; u = (u - 1) & t) {
            const unsigned col = static_cast<unsigned>(std::popcount(u)) + 1;
            T prod = c[u];
            for (unsigned i = 0; i < d; ++i)
                if ((t >> i & 1u) && !(u >> i & 1u)) prod = ring.mul(prod, ring.neg(at(i, col)));
            sum = ring.add(sum, prod);
            if (u == 0) break;
        }
        c[t] = ring.neg(sum);
    }

    T total = ring.zero();
    for (std::uint32_t t = 0; t < top; ++t) {
        if (static_cast<unsigned>(std::popcount(t)) != server - 1) continue;
        T prod = c[t];
        for (unsigned i = 0; i < d; ++i)
            if (!(t >> i & 1u)) prod = ring.mul(prod, at(i, server));
        total = ring.add(total, prod);
    }
    return total;
}

// One view per server; d = labels.size() = m.size(), labels distinct,
// 2 <= d <= kMaxServers. Mask a_{i,j} derives from label i at index j-1.
std::vector<ShareMatrix> ds_encrypt(const Field& f, const PrfKey& key,
                                    std::span<const std::string> labels, std::span<const Fe> m);

// S_j from server j's own view.
Fe compute_Sj(const Field& f, const ShareMatrix& view);

// Message-independent constant of sum S_j, recomputed from the PRF alone
// (the views with every message set to zero).
Fe ds_offset(const Field& f, const PrfKey& key, std::span<const std::string> labels);

// responses[j-1] = S_j; returns sum of responses minus the offset.
Fe ds_reconstruct(const Field& f, const PrfKey& key, std::span<const std::string> labels,
                  std::span<const Fe> responses);

// ---- Verifiable variant: every stored entry carries a degree-1 MAC tag ----

// k1 seeds masks exactly as the unverified scheme; k2 seeds per-entry MAC
// values; s[j-1] is server j's secret verification point (nonzero).
struct VdsKey {
    PrfKey k1;
    PrfKey k2;
    std::vector<Fe> s;
};

struct TagRow {
    std::vector<Poly> entries;  // d degree-1 tags
    friend bool operator==(const TagRow&, const TagRow&) = default;
};

struct VdsShareMatrix {
    std::uint32_t server = 0;
    std::vector<TagRow> rows;
    friend bool operator==(const VdsShareMatrix&, const VdsShareMatrix&) = default;
};

// Per-server accept flags plus the reconstructed product when all pass.
struct VdsOutcome {
    std::vector<bool> ok;
    Fe value{};
    bool accepted() const {
        for (const bool b : ok)
            if (!b) return false;
        return !ok.empty();
    }
};

VdsKey vds_keygen(const Field& f, std::uint32_t d);

std::vector<VdsShareMatrix> vds_encrypt(const Field& f, const VdsKey& key,
                                        std::span<const std::string> labels,
                                        std::span<const Fe> m);

// Tag mirror of compute_Sj; the response carries exactly d+1 coefficients.
Poly compute_Sj_tags(const Field& f, const VdsShareMatrix& view);

// Checks responses[j-1](s_j) against the MAC combination recomputed from k2,
// then reconstructs from the values at 0. Every response must carry exactly
// d+1 coefficients.
VdsOutcome vds_decrypt(const Field& f, const VdsKey& key, std::span<const std::string> labels,
                       std::span<const Poly> responses);

// Wire forms. Rows are the unit a daemon stores per label; whole matrices
// are the unit the client assembles per server.
std::vector<std::uint8_t> serialize(const Field& f, const ShareRow& row);
std::vector<std::uint8_t> serialize(const Field& f, const ShareMatrix& m);
std::vector<std::uint8_t> serialize(const Field& f, const TagRow& row);
std::vector<std::uint8_t> serialize(const Field& f, const VdsShareMatrix& m);
ShareRow parse_share_row(const Field& f, std::span<const std::uint8_t> bytes);
ShareMatrix parse_share_matrix(const Field& f, std::span<const std::uint8_t> bytes);
TagRow parse_tag_row(const Field& f, std::span<const std::uint8_t> bytes);
VdsShareMatrix parse_vds_share_matrix(const Field& f, std::span<const std::uint8_t> bytes);

}  // namespace dcled
