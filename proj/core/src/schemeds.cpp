#include "dcled/schemeds.hpp"

#include "bytes.hpp"
#include "dcled/scheme2v.hpp"

#include <unordered_set>
#include <utility>

namespace dcled {

namespace {

constexpr std::uint8_t kTagMatrix = 0x20;
constexpr std::uint8_t kTagRowPlain = 0x21;
constexpr std::uint8_t kTagVdsMatrix = 0x22;
constexpr std::uint8_t kTagRowTagged = 0x23;

struct FeRing {
    using value_type = Fe;
    const Field& f;
    Fe zero() const { return f.zero(); }
    Fe one() const { return f.one(); }
    Fe add(const Fe& a, const Fe& b) const { return f.add(a, b); }
    Fe mul(const Fe& a, const Fe& b) const { return f.mul(a, b); }
    Fe neg(const Fe& a) const { return f.neg(a); }
};

struct PolyRing {
    using value_type = Poly;
    const Field& f;
    Poly zero() const { return Poly{{f.zero()}}; }
    Poly one() const { return Poly{{f.one()}}; }
    Poly add(const Poly& a, const Poly& b) const { return poly_add(f, a, b); }
    Poly mul(const Poly& a, const Poly& b) const { return poly_mul(f, a, b); }
    Poly neg(const Poly& a) const { return poly_scale(f, a, f.neg(f.one())); }
};

std::uint32_t checked_server_count(std::size_t labels, std::size_t values) {
    detail::require(labels == values, "one value per label required");
    detail::require(labels >= 2 && labels <= kMaxServers, "server count out of range");
    return static_cast<std::uint32_t>(labels);
}

void check_labels_distinct(std::span<const std::string> labels) {
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels)
        detail::require(seen.insert(l).second, "labels must be distinct");
}

// a_{i,j} for all rows and columns, row-major.
std::vector<Fe> derive_mask_matrix(const Field& f, const PrfKey& key,
                                   std::span<const std::string> labels, std::uint32_t d) {
    std::vector<Fe> a;
    a.reserve(std::size_t{d} * d);
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 1; j <= d; ++j) a.push_back(prf_eval(f, key, labels[i], j - 1));
    return a;
}

// MAC value for server j's copy of entry (row i, column k).
Fe mac_value(const Field& f, const PrfKey& k2, std::string_view label, std::uint32_t server,
             std::uint32_t col, std::uint32_t d) {
    return prf_eval(f, k2, label, (server - 1) * d + (col - 1));
}

std::vector<Fe> flatten(const std::vector<ShareRow>& rows) {
    std::vector<Fe> entries;
    for (const auto& row : rows) entries.insert(entries.end(), row.entries.begin(), row.entries.end());
    return entries;
}

void check_matrix_shape(std::uint32_t server, std::size_t d, const auto& rows) {
    detail::require(d >= 2 && d <= kMaxServers, "server count out of range");
    detail::require(server >= 1 && server <= d, "server index out of range");
    for (const auto& row : rows)
        detail::require(row.entries.size() == d, "share matrix is not d x d");
}

}  // namespace

std::vector<ShareMatrix> ds_encrypt(const Field& f, const PrfKey& key,
                                    std::span<const std::string> labels, std::span<const Fe> m) {
    const std::uint32_t d = checked_server_count(labels.size(), m.size());
    check_labels_distinct(labels);
    const std::vector<Fe> a = derive_mask_matrix(f, key, labels, d);
    std::vector<ShareMatrix> views(d);
    for (std::uint32_t j = 1; j <= d; ++j) {
        views[j - 1].server = j;
        views[j - 1].rows.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) {
            auto& row = views[j - 1].rows[i].entries;
            row.resize(d);
            for (std::uint32_t k = 1; k <= d; ++k) {
                const Fe mask = a[std::size_t{i} * d + (k - 1)];
                row[k - 1] = (k == j) ? f.sub(m[i], mask) : mask;
            }
        }
    }
    return views;
}

Fe compute_Sj(const Field& f, const ShareMatrix& view) {
    check_matrix_shape(view.server, view.rows.size(), view.rows);
    const std::vector<Fe> entries = flatten(view.rows);
    return cascade_sum(FeRing{f}, view.server, static_cast<std::uint32_t>(view.rows.size()),
                       std::span<const Fe>{entries});
}

Fe ds_offset(const Field& f, const PrfKey& key, std::span<const std::string> labels) {
    const std::uint32_t d = checked_server_count(labels.size(), labels.size());
    check_labels_distinct(labels);
    const std::vector<Fe> zeros(d, f.zero());
    Fe total = f.zero();
    for (const ShareMatrix& view : ds_encrypt(f, key, labels, zeros))
        total = f.add(total, compute_Sj(f, view));
    return total;
}

Fe ds_reconstruct(const Field& f, const PrfKey& key, std::span<const std::string> labels,
                  std::span<const Fe> responses) {
    detail::require(responses.size() == labels.size(), "one response per server required");
    Fe total = f.zero();
    for (const Fe r : responses) total = f.add(total, r);
    return f.sub(total, ds_offset(f, key, labels));
}

VdsKey vds_keygen(const Field& f, std::uint32_t d) {
    detail::require(d >= 2 && d <= kMaxServers, "server count out of range");
    SecureRng rng;
    VdsKey key{random_prf_key(), random_prf_key(), {}};
    key.s.reserve(d);
    for (std::uint32_t j = 0; j < d; ++j) key.s.push_back(f.sample_nonzero(rng));
    return key;
}

std::vector<VdsShareMatrix> vds_encrypt(const Field& f, const VdsKey& key,
                                        std::span<const std::string> labels,
                                        std::span<const Fe> m) {
    const std::uint32_t d = checked_server_count(labels.size(), m.size());
    detail::require(key.s.size() == d, "key was generated for a different server count");
    const std::vector<ShareMatrix> plain = ds_encrypt(f, key.k1, labels, m);
    std::vector<VdsShareMatrix> views(d);
    for (std::uint32_t j = 1; j <= d; ++j) {
        views[j - 1].server = j;
        views[j - 1].rows.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) {
            auto& row = views[j - 1].rows[i].entries;
            row.reserve(d);
            for (std::uint32_t k = 1; k <= d; ++k)
                row.push_back(make_tag(f, plain[j - 1].rows[i].entries[k - 1],
                                       mac_value(f, key.k2, labels[i], j, k, d), key.s[j - 1]));
        }
    }
    return views;
}

Poly compute_Sj_tags(const Field& f, const VdsShareMatrix& view) {
    check_matrix_shape(view.server, view.rows.size(), view.rows);
    const std::uint32_t d = static_cast<std::uint32_t>(view.rows.size());
    std::vector<Poly> entries;
    entries.reserve(std::size_t{d} * d);
    for (const auto& row : view.rows)
        for (const Poly& tag : row.entries) {
            detail::require(tag.c.size() == 2, "fresh tag must be a degree-1 polynomial");
            entries.push_back(tag);
        }
    Poly out = cascade_sum(PolyRing{f}, view.server, d, std::span<const Poly>{entries});
    // Pad to the fixed response width: degree at most d.
    out.c.resize(d + 1, f.zero());
    return out;
}

VdsOutcome vds_decrypt(const Field& f, const VdsKey& key, std::span<const std::string> labels,
                       std::span<const Poly> responses) {
    const std::uint32_t d = checked_server_count(labels.size(), labels.size());
    check_labels_distinct(labels);
    detail::require(key.s.size() == d, "key was generated for a different server count");
    detail::require(responses.size() == d, "one response per server required");
    for (const Poly& r : responses)
        detail::require(r.c.size() == std::size_t{d} + 1,
                        "evaluated tag must carry exactly d+1 coefficients");

    VdsOutcome out;
    out.ok.resize(d, false);
    for (std::uint32_t j = 1; j <= d; ++j) {
        // The MAC combination: the same S_j formula on the per-entry MAC
        // values, with server j's own column playing the masked role.
        std::vector<Fe> r;
        r.reserve(std::size_t{d} * d);
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t k = 1; k <= d; ++k)
                r.push_back(mac_value(f, key.k2, labels[i], j, k, d));
        const Fe expected = cascade_sum(FeRing{f}, j, d, std::span<const Fe>{r});
        out.ok[j - 1] = poly_eval(f, responses[j - 1], key.s[j - 1]) == expected;
    }
    if (out.accepted()) {
        std::vector<Fe> values;
        values.reserve(d);
        for (const Poly& r : responses) values.push_back(r.c[0]);
        out.value = ds_reconstruct(f, key.k1, labels, values);
    }
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const ShareRow& row) {
    detail::require(row.entries.size() >= 2 && row.entries.size() <= kMaxServers,
                    "server count out of range");
    std::vector<std::uint8_t> out;
    detail::put_u8(out, kTagRowPlain);
    detail::put_u8(out, static_cast<std::uint8_t>(row.entries.size()));
    for (const Fe v : row.entries) detail::put_fe(f, out, v);
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const ShareMatrix& m) {
    check_matrix_shape(m.server, m.rows.size(), m.rows);
    std::vector<std::uint8_t> out;
    detail::put_u8(out, kTagMatrix);
    detail::put_u8(out, static_cast<std::uint8_t>(m.server));
    detail::put_u8(out, static_cast<std::uint8_t>(m.rows.size()));
    for (const auto& row : m.rows)
        for (const Fe v : row.entries) detail::put_fe(f, out, v);
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const TagRow& row) {
    detail::require(row.entries.size() >= 2 && row.entries.size() <= kMaxServers,
                    "server count out of range");
    std::vector<std::uint8_t> out;
    detail::put_u8(out, kTagRowTagged);
    detail::put_u8(out, static_cast<std::uint8_t>(row.entries.size()));
    for (const Poly& tag : row.entries) {
        detail::require(tag.c.size() == 2, "fresh tag must be a degree-1 polynomial");
        append_poly(f, tag, out);
    }
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const VdsShareMatrix& m) {
    check_matrix_shape(m.server, m.rows.size(), m.rows);
    std::vector<std::uint8_t> out;
    detail::put_u8(out, kTagVdsMatrix);
    detail::put_u8(out, static_cast<std::uint8_t>(m.server));
    detail::put_u8(out, static_cast<std::uint8_t>(m.rows.size()));
    for (const auto& row : m.rows)
        for (const Poly& tag : row.entries) {
            detail::require(tag.c.size() == 2, "fresh tag must be a degree-1 polynomial");
            append_poly(f, tag, out);
        }
    return out;
}

namespace {

std::uint8_t read_server_count(detail::ByteReader& r) {
    const std::uint8_t d = r.u8();
    detail::require(d >= 2 && d <= kMaxServers, "server count out of range");
    return d;
}

}  // namespace

ShareRow parse_share_row(const Field& f, std::span<const std::uint8_t> bytes) {
    detail::ByteReader r{bytes};
    detail::require(r.u8() == kTagRowPlain, "not a share row");
    const std::uint8_t d = read_server_count(r);
    ShareRow row;
    for (unsigned k = 0; k < d; ++k) row.entries.push_back(r.fe(f));
    detail::require(r.empty(), "trailing bytes after share row");
    return row;
}

ShareMatrix parse_share_matrix(const Field& f, std::span<const std::uint8_t> bytes) {
    detail::ByteReader r{bytes};
    detail::require(r.u8() == kTagMatrix, "not a share matrix");
    ShareMatrix m;
    m.server = r.u8();
    const std::uint8_t d = read_server_count(r);
    detail::require(m.server >= 1 && m.server <= d, "server index out of range");
    m.rows.resize(d);
    for (auto& row : m.rows)
        for (unsigned k = 0; k < d; ++k) row.entries.push_back(r.fe(f));
    detail::require(r.empty(), "trailing bytes after share matrix");
    return m;
}

TagRow parse_tag_row(const Field& f, std::span<const std::uint8_t> bytes) {
    detail::ByteReader r{bytes};
    detail::require(r.u8() == kTagRowTagged, "not a tagged share row");
    const std::uint8_t d = read_server_count(r);
    TagRow row;
    for (unsigned k = 0; k < d; ++k) {
        Poly tag = detail::read_poly(f, r);
        detail::require(tag.c.size() == 2, "fresh tag must be a degree-1 polynomial");
        row.entries.push_back(std::move(tag));
    }
    detail::require(r.empty(), "trailing bytes after tagged share row");
    return row;
}

VdsShareMatrix parse_vds_share_matrix(const Field& f, std::span<const std::uint8_t> bytes) {
    detail::ByteReader r{bytes};
    detail::require(r.u8() == kTagVdsMatrix, "not a tagged share matrix");
    VdsShareMatrix m;
    m.server = r.u8();
    const std::uint8_t d = read_server_count(r);
    detail::require(m.server >= 1 && m.server <= d, "server index out of range");
    m.rows.resize(d);
    for (auto& row : m.rows)
        for (unsigned k = 0; k < d; ++k) {
            Poly tag = detail::read_poly(f, r);
            detail::require(tag.c.size() == 2, "fresh tag must be a degree-1 polynomial");
            row.entries.push_back(std::move(tag));
        }
    detail::require(r.empty(), "trailing bytes after tagged share matrix");
    return m;
}

}  // namespace dcled
