#include "dcled/field.hpp"

#include <array>

namespace dcled {

namespace {

// 128x128 -> 256 bit product, schoolbook on 64-bit limbs.
inline void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = u128{a0} * b0;
    const u128 p01 = u128{a0} * b1;
    const u128 p10 = u128{a1} * b0;
    const u128 p11 = u128{a1} * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = (mid << 64) | static_cast<u64>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
}

// p^{-1} mod 2^64 by Newton iteration (p odd).
inline u64 inv64_of(u64 p) {
    u64 x = p;  // correct mod 2^3
    for (int i = 0; i < 5; ++i) x *= 2 - p * x;
    return x;
}

// 2x mod p for x < p, valid for any odd p < 2^128. When 2x >= p the wrapped
// subtraction (x << 1) - p is exact because the true value is below 2^128.
inline u128 dbl_mod(u128 x, u128 p) {
    return x > (p >> 1) ? (x << 1) - p : (x << 1);
}

// Minimal Montgomery context, also used by the primality test.
struct Mont {
    u128 n;
    u64 inv;   // -n^{-1} mod 2^64
    u128 r1;   // 2^128 mod n
    u128 r2;   // (2^128)^2 mod n

    explicit Mont(u128 n_) : n(n_) {
        inv = 0 - inv64_of(static_cast<u64>(n));
        r1 = bit_length(n) == 128 ? u128{0} - n  // 2^128 - n is already reduced
                                  : dbl_mod((u128{1} << 127) % n, n);
        u128 x = r1;
        for (int i = 0; i < 128; ++i) x = dbl_mod(x, n);
        r2 = x;  // r1 * 2^128 mod n
    }

    // T = hi*2^128 + lo with T < n * 2^128; returns T * 2^-128 mod n.
    u128 redc(u128 hi, u128 lo) const {
        u64 t[5] = {static_cast<u64>(lo), static_cast<u64>(lo >> 64),
                    static_cast<u64>(hi), static_cast<u64>(hi >> 64), 0};
        const u64 n0 = static_cast<u64>(n), n1 = static_cast<u64>(n >> 64);
        for (int i = 0; i < 2; ++i) {
            const u64 m = t[i] * inv;
            u128 c = u128{m} * n0 + t[i];
            c >>= 64;
            c += u128{m} * n1 + t[i + 1];
            t[i + 1] = static_cast<u64>(c);
            c >>= 64;
            for (int k = i + 2; c != 0 && k < 5; ++k) {
                c += t[k];
                t[k] = static_cast<u64>(c);
                c >>= 64;
            }
        }
        u128 r = (u128{t[3]} << 64) | t[2];
        if (t[4] != 0 || r >= n) r -= n;  // wrap-exact: result < n < 2^128
        return r;
    }

    u128 mul(u128 a, u128 b) const {  // plain-domain a*b mod n
        u128 hi, lo;
        mul_wide(a, b, hi, lo);
        const u128 t = redc(hi, lo);
        mul_wide(t, r2, hi, lo);
        return redc(hi, lo);
    }

    u128 to_mont(u128 a) const {
        u128 hi, lo;
        mul_wide(a, r2, hi, lo);
        return redc(hi, lo);
    }
    u128 mont_mul(u128 a, u128 b) const {  // both in Montgomery domain
        u128 hi, lo;
        mul_wide(a, b, hi, lo);
        return redc(hi, lo);
    }
    // a^e mod n for a in plain domain; result in plain domain.
    u128 pow(u128 a, u128 e) const {
        u128 base = to_mont(a % n);
        u128 acc = r1;  // 1 in Montgomery form
        while (e != 0) {
            if (e & 1) acc = mont_mul(acc, base);
            base = mont_mul(base, base);
            e >>= 1;
        }
        return redc(0, acc);
    }
};

// Deterministic xorshift-style mixer for extra Miller-Rabin bases.
inline u64 splitmix(u64& s) {
    u64 z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

bool miller_rabin_witness(const Mont& m, u128 n, u128 a, u128 d, unsigned s) {
    a %= n;
    if (a == 0) return false;  // not a witness
    u128 x = m.pow(a, d);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = m.mul(x, x);
        if (x == n - 1) return false;
    }
    return true;  // composite witnessed
}

}  // namespace

bool is_probable_prime(u128 n, unsigned extra_rounds) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                    29, 31, 37, 41, 43, 47, 53, 59, 61};
    for (u64 q : small) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const Mont m(n);
    // Deterministic for n < 3.317e24 (first 12 prime bases).
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(m, n, a, d, s)) return false;
    }
    if (bit_length(n) > 81) {
        u64 seed = static_cast<u64>(n) ^ static_cast<u64>(n >> 64) ^ 0x5dce'd51e'd51e'd5ceull;
        for (unsigned i = 0; i < extra_rounds; ++i) {
            const u64 hi = splitmix(seed);
            const u64 lo = splitmix(seed);
            const u128 a = (u128{hi} << 64 | lo) % (n - 3) + 2;
            if (miller_rabin_witness(m, n, a, d, s)) return false;
        }
    }
    return true;
}

Field::Field(u128 p, Reduction strategy) : p_(p) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("modulus must be an odd prime >= 3");
    if (!is_probable_prime(p)) throw std::invalid_argument("modulus is not prime");
    bits_ = bit_length(p);
    fold_c_ = u128{0} - p;  // 2^128 - p, meaningful only when bits_ == 128
    fold_ = strategy == Reduction::automatic && bits_ == 128 && (fold_c_ >> 64) == 0;
    const Mont m(p);
    inv64_ = m.inv;
    r2_ = m.r2;
}

u128 Field::redc(u128 hi, u128 lo) const {
    u64 t[5] = {static_cast<u64>(lo), static_cast<u64>(lo >> 64),
                static_cast<u64>(hi), static_cast<u64>(hi >> 64), 0};
    const u64 n0 = static_cast<u64>(p_), n1 = static_cast<u64>(p_ >> 64);
    for (int i = 0; i < 2; ++i) {
        const u64 m = t[i] * inv64_;
        u128 c = u128{m} * n0 + t[i];
        c >>= 64;
        c += u128{m} * n1 + t[i + 1];
        t[i + 1] = static_cast<u64>(c);
        c >>= 64;
        for (int k = i + 2; c != 0 && k < 5; ++k) {
            c += t[k];
            t[k] = static_cast<u64>(c);
            c >>= 64;
        }
    }
    u128 r = (u128{t[3]} << 64) | t[2];
    if (t[4] != 0 || r >= p_) r -= p_;
    return r;
}

u128 Field::mul_mont(u128 x, u128 y) const {
    u128 hi, lo;
    mul_wide(x, y, hi, lo);
    const u128 t = redc(hi, lo);
    mul_wide(t, r2_, hi, lo);
    return redc(hi, lo);
}

u128 Field::mul_fold(u128 x, u128 y) const {
    // p = 2^128 - c with c < 2^64, so 2^128 == c (mod p) and the high half
    // folds down twice before a single conditional subtraction.
    const u128 c = fold_c_;
    u128 hi, lo;
    mul_wide(x, y, hi, lo);
    u128 h2, l2;
    mul_wide(hi, c, h2, l2);  // hi*c < 2^192, so h2 < 2^64
    u128 s = l2 + lo;
    const u128 t = h2 + (s < l2 ? 1 : 0);  // t <= 2^64
    const u128 tc = t * c;                 // < 2^128
    u128 r = s + tc;
    if (r < s) r += c;  // wrapped past 2^128, which is congruent to +c
    if (r >= p_) r -= p_;
    return r;
}

Fe Field::pow(Fe x, u128 e) const {
    check(x);
    Fe acc = one();
    Fe base = x;
    while (e != 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

Fe Field::inv(Fe x) const {
    check(x);
    if (x.v == 0) throw std::domain_error("inverse of zero");
    return pow(x, p_ - 2);
}

std::vector<std::uint8_t> Field::encode(Fe x) const {
    check(x);
    const std::size_t w = byte_width();
    std::vector<std::uint8_t> out(w);
    u128 v = x.v;
    for (std::size_t i = 0; i < w; ++i) {
        out[w - 1 - i] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
    return out;
}

Fe Field::decode(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != byte_width())
        throw std::invalid_argument("encoded field element has wrong width");
    u128 v = 0;
    for (std::uint8_t b : bytes) v = v << 8 | b;
    if (v >= p_) throw std::invalid_argument("encoded value is not a canonical field element");
    return Fe{v};
}

std::string Field::to_hex(Fe x) const {
    const auto bytes = encode(x);
    return hex_encode(bytes);
}

Fe Field::from_hex(std::string_view hex) const {
    const auto bytes = hex_decode(hex);
    return decode(bytes);
}

}  // namespace dcled
