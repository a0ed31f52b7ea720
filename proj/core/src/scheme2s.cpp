#include "dcled/scheme2s.hpp"

namespace dcled {

namespace {

constexpr std::uint8_t kTagShare1 = 0x01;
constexpr std::uint8_t kTagShare2 = 0x02;

}  // namespace

Fe eval1(const Field& f, const QuadraticProgram& p, std::span<const Share1> shares) {
    if (shares.size() != p.labels.size())
        throw std::invalid_argument("share count does not match program inputs");
    Fe acc = f.zero();
    for (const auto& t : p.quad) {
        const Share1& si = shares[t.i - 1];
        const Share1& sj = shares[t.j - 1];
        const Fe uu = f.mul(si.u, sj.u);
        const Fe vv = f.mul(si.v, sj.v);
        acc = f.add(acc, f.mul(t.alpha, f.sub(uu, vv)));
    }
    return acc;
}

Fe eval2(const Field& f, const QuadraticProgram& p, std::span<const Share2> shares) {
    if (shares.size() != p.labels.size())
        throw std::invalid_argument("share count does not match program inputs");
    Fe acc = f.zero();
    for (const auto& t : p.quad) {
        const Share2& si = shares[t.i - 1];
        const Share2& sj = shares[t.j - 1];
        const Fe cross = f.add(f.mul(sj.a, si.w), f.mul(si.a, sj.w));
        acc = f.add(acc, f.mul(t.alpha, cross));
    }
    for (const auto& t : p.lin) acc = f.add(acc, f.mul(t.beta, shares[t.k - 1].w));
    return acc;
}

Fe decrypt2s(const Field& f, const TwoServerKey& key, const QuadraticProgram& p, Fe c1, Fe c2) {
    std::vector<Fe> b(p.labels.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = prf_eval(f, key.k, p.labels[i], 1);
    return f.add(f.add(c1, c2), eval_plain(f, p, b));
}

std::vector<std::uint8_t> serialize(const Field& f, const Share1& s) {
    std::vector<std::uint8_t> out{kTagShare1};
    const auto u = f.encode(s.u), v = f.encode(s.v);
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const Share2& s) {
    std::vector<std::uint8_t> out{kTagShare2};
    const auto w = f.encode(s.w), a = f.encode(s.a);
    out.insert(out.end(), w.begin(), w.end());
    out.insert(out.end(), a.begin(), a.end());
    return out;
}

namespace {

std::pair<Fe, Fe> parse_pair(const Field& f, std::span<const std::uint8_t> bytes,
                             std::uint8_t tag, const char* what) {
    const std::size_t w = f.byte_width();
    if (bytes.size() != 1 + 2 * w || bytes[0] != tag) throw std::invalid_argument(what);
    return {f.decode(bytes.subspan(1, w)), f.decode(bytes.subspan(1 + w, w))};
}

}  // namespace

Share1 parse_share1(const Field& f, std::span<const std::uint8_t> bytes) {
    const auto [u, v] = parse_pair(f, bytes, kTagShare1, "malformed share for server 1");
    return {u, v};
}

Share2 parse_share2(const Field& f, std::span<const std::uint8_t> bytes) {
    const auto [w, a] = parse_pair(f, bytes, kTagShare2, "malformed share for server 2");
    return {w, a};
}

}  // namespace dcled
