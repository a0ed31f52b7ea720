#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcled/util.hpp"

namespace dcled {

/// One field element, canonical representative in [0, p). Arithmetic goes
/// through a Field, which carries the modulus; elements produced under
/// different moduli must not be mixed (ops validate the canonical range and
/// throw std::invalid_argument on out-of-range operands).
struct Fe {
    u128 v = 0;
    friend constexpr bool operator==(const Fe&, const Fe&) = default;
};

/// Miller-Rabin probable-prime test for n up to 128 bits. Deterministic for
/// n < 3.3e24 via the standard 12-prime base set; larger n additionally get
/// `extra_rounds` fixed pseudorandom bases derived from n.
bool is_probable_prime(u128 n, unsigned extra_rounds = 40);

/// Prime-order field Z_p, p odd, 3 <= p < 2^128.
///
/// Reduction strategy is fixed at construction: moduli of the form 2^128 - c
/// with c < 2^64 (the default modulus is 2^128 - 159) use folded reduction;
/// everything else goes through Montgomery multiplication with R = 2^128.
class Field {
public:
    enum class Reduction { automatic, montgomery };

    /// Throws std::invalid_argument unless p is an odd probable prime >= 3.
    explicit Field(u128 p, Reduction strategy = Reduction::automatic);

    /// Largest 128-bit prime, the default deployment modulus.
    static u128 default_modulus() { return ~u128{0} - 158; }

    u128 modulus() const { return p_; }
    unsigned bits() const { return bits_; }
    /// Fixed encoding width in bytes: ceil(bits / 8).
    std::size_t byte_width() const { return (bits_ + 7) / 8; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    Fe from_u128(u128 x) const { return Fe{x % p_}; }
    Fe from_u64(u64 x) const { return from_u128(x); }

    Fe add(Fe x, Fe y) const {
        check(x), check(y);
        u128 s = x.v + y.v;
        // x + y < 2p, so one wrap-aware subtraction restores the range.
        if (s < x.v || s >= p_) s -= p_;
        return Fe{s};
    }
    Fe sub(Fe x, Fe y) const {
        check(x), check(y);
        return Fe{x.v >= y.v ? x.v - y.v : p_ - (y.v - x.v)};
    }
    Fe neg(Fe x) const {
        check(x);
        return Fe{x.v == 0 ? u128{0} : p_ - x.v};
    }
    Fe mul(Fe x, Fe y) const {
        check(x), check(y);
        return Fe{fold_ ? mul_fold(x.v, y.v) : mul_mont(x.v, y.v)};
    }
    /// x^e by square-and-multiply.
    Fe pow(Fe x, u128 e) const;
    /// Multiplicative inverse via Fermat; throws std::domain_error on zero.
    Fe inv(Fe x) const;

    /// Big-endian, fixed byte_width() encoding.
    std::vector<std::uint8_t> encode(Fe x) const;
    /// Rejects wrong width and non-canonical values (>= p).
    Fe decode(std::span<const std::uint8_t> bytes) const;
    /// Lowercase hex, always 2 * byte_width() characters.
    std::string to_hex(Fe x) const;
    Fe from_hex(std::string_view hex) const;

    /// Uniform element by rejection sampling from the generator's raw bits.
    /// Requires a 64-bit generator (e.g. std::mt19937_64).
    template <class URBG>
    Fe sample(URBG& g) const {
        static_assert(sizeof(typename URBG::result_type) == 8, "need a 64-bit generator");
        const u128 mask = bits_ >= 128 ? ~u128{0} : ((u128{1} << bits_) - 1);
        for (;;) {
            const u64 hi = g();
            const u64 lo = g();
            u128 r = (u128{hi} << 64) | lo;
            r &= mask;
            if (r < p_) return Fe{r};
        }
    }
    /// Uniform nonzero element (resamples zero).
    template <class URBG>
    Fe sample_nonzero(URBG& g) const {
        for (;;) {
            Fe r = sample(g);
            if (r.v != 0) return r;
        }
    }

private:
    void check(Fe x) const {
        if (x.v >= p_) throw std::invalid_argument("field element out of range for this modulus");
    }
    u128 mul_fold(u128 x, u128 y) const;
    u128 mul_mont(u128 x, u128 y) const;
    u128 redc(u128 hi, u128 lo) const;

    u128 p_;
    unsigned bits_;
    bool fold_;
    u128 fold_c_;  // 2^128 - p when folding
    u64 inv64_;    // -p^{-1} mod 2^64
    u128 r2_;      // (2^128)^2 mod p
};

}  // namespace dcled
