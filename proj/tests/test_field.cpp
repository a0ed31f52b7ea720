#include "dcled/field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dcled;

namespace {

// Independent multiplication oracle: double-and-add built only on the
// addition path, so it shares no code with either reduction strategy.
Fe mul_oracle(const Field& f, Fe x, Fe y) {
    Fe acc = f.zero();
    bool started = false;
    for (int i = 127; i >= 0; --i) {
        if (started) acc = f.add(acc, acc);
        if ((y.v >> i) & 1) {
            acc = f.add(acc, x);
            started = true;
        }
    }
    return acc;
}

constexpr u128 mersenne127 = (~u128{0}) >> 1;  // 2^127 - 1, prime

}  // namespace

TEST(Field, FrozenVectorsMod97) {
    const Field f(97);
    EXPECT_EQ(f.add(Fe{50}, Fe{60}), Fe{13});
    EXPECT_EQ(f.add(Fe{96}, Fe{1}), Fe{0});
    EXPECT_EQ(f.mul(Fe{93}, Fe{93}), Fe{16});
    EXPECT_EQ(f.inv(Fe{2}), Fe{49});
    EXPECT_EQ(f.inv(Fe{7}), Fe{14});
    EXPECT_EQ(f.mul(Fe{7}, f.inv(Fe{7})), f.one());
}

TEST(Field, DefaultModulusProperties) {
    const u128 p = Field::default_modulus();
    EXPECT_EQ(p, (u128{0xffffffffffffffffull} << 64) | 0xffffffffffffff61ull);
    const Field f(p);
    EXPECT_EQ(f.bits(), 128u);
    EXPECT_EQ(f.byte_width(), 16u);
    // All-ones is 2^128 - 1 >= p and must be rejected as non-canonical.
    const std::vector<std::uint8_t> ones(16, 0xff);
    EXPECT_THROW((void)f.decode(ones), std::invalid_argument);
    // p - 1 round-trips.
    const Fe top{p - 1};
    EXPECT_EQ(f.decode(f.encode(top)), top);
    EXPECT_EQ(f.to_hex(top).size(), 32u);
}

TEST(Field, EncodingMod97) {
    const Field f(97);
    EXPECT_EQ(f.byte_width(), 1u);
    EXPECT_EQ(f.to_hex(Fe{13}), "0d");
    EXPECT_EQ(f.from_hex("0D"), Fe{13});
    const std::vector<std::uint8_t> exactly_p{97};
    EXPECT_THROW((void)f.decode(exactly_p), std::invalid_argument);
    const std::vector<std::uint8_t> below{96};
    EXPECT_EQ(f.decode(below), Fe{96});
    const std::vector<std::uint8_t> wide{0, 7};
    EXPECT_THROW((void)f.decode(wide), std::invalid_argument);
}

TEST(Field, MulMatchesOracleAcrossStrategies) {
    std::mt19937_64 rng(0xf1e1d);
    const Field fold(Field::default_modulus());
    const Field mont(Field::default_modulus(), Field::Reduction::montgomery);
    const Field m127(mersenne127);
    const Field small(97);
    for (int i = 0; i < 400; ++i) {
        const Fe a = fold.sample(rng), b = fold.sample(rng);
        const Fe want = mul_oracle(fold, a, b);
        EXPECT_EQ(fold.mul(a, b), want);
        EXPECT_EQ(mont.mul(a, b), want);
    }
    for (int i = 0; i < 400; ++i) {
        const Fe a = m127.sample(rng), b = m127.sample(rng);
        EXPECT_EQ(m127.mul(a, b), mul_oracle(m127, a, b));
    }
    for (int i = 0; i < 400; ++i) {
        const Fe a = small.sample(rng), b = small.sample(rng);
        EXPECT_EQ(small.mul(a, b), Fe{a.v * b.v % 97});
    }
}

TEST(Field, AlgebraicLaws) {
    std::mt19937_64 rng(42);
    for (const u128 p : {u128{5}, u128{97}, mersenne127, Field::default_modulus()}) {
        const Field f(p);
        for (int i = 0; i < 200; ++i) {
            const Fe a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
            EXPECT_EQ(f.add(a, b), f.add(b, a));
            EXPECT_EQ(f.mul(a, b), f.mul(b, a));
            EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            EXPECT_EQ(f.sub(f.add(a, b), b), a);
            EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
            if (a.v != 0) {
                EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
                EXPECT_EQ(f.pow(a, p - 1), f.one());
            }
        }
    }
}

TEST(Field, PowAndInvEdgeCases) {
    const Field f(97);
    EXPECT_EQ(f.pow(Fe{5}, 0), f.one());
    EXPECT_EQ(f.pow(f.zero(), 5), f.zero());
    EXPECT_THROW((void)f.inv(f.zero()), std::domain_error);
}

TEST(Field, RoundTripRandom) {
    std::mt19937_64 rng(7);
    for (const u128 p : {u128{5}, u128{101}, Field::default_modulus()}) {
        const Field f(p);
        for (int i = 0; i < 100; ++i) {
            const Fe a = f.sample(rng);
            EXPECT_EQ(f.decode(f.encode(a)), a);
            EXPECT_EQ(f.from_hex(f.to_hex(a)), a);
        }
    }
}

TEST(Field, RejectsBadModuli) {
    EXPECT_THROW(Field(0), std::invalid_argument);
    EXPECT_THROW(Field(1), std::invalid_argument);
    EXPECT_THROW(Field(2), std::invalid_argument);  // even moduli unsupported
    EXPECT_THROW(Field(91), std::invalid_argument);
    EXPECT_THROW(Field(u128{1} << 100), std::invalid_argument);
}

TEST(Field, RejectsMismatchedElements) {
    const Field f(97);
    EXPECT_THROW((void)f.add(Fe{200}, Fe{1}), std::invalid_argument);
    EXPECT_THROW((void)f.mul(Fe{1}, Fe{97}), std::invalid_argument);
    EXPECT_THROW((void)f.encode(Fe{97}), std::invalid_argument);
}

TEST(Field, ProbablePrime) {
    EXPECT_TRUE(is_probable_prime(2));
    EXPECT_TRUE(is_probable_prime(3));
    EXPECT_TRUE(is_probable_prime(5));
    EXPECT_TRUE(is_probable_prime(97));
    EXPECT_TRUE(is_probable_prime(101));
    EXPECT_TRUE(is_probable_prime((u128{1} << 89) - 1));
    EXPECT_TRUE(is_probable_prime(mersenne127));
    EXPECT_TRUE(is_probable_prime(Field::default_modulus()));

    EXPECT_FALSE(is_probable_prime(0));
    EXPECT_FALSE(is_probable_prime(1));
    EXPECT_FALSE(is_probable_prime(91));
    EXPECT_FALSE(is_probable_prime(561));         // Carmichael
    EXPECT_FALSE(is_probable_prime(3215031751));  // strong pseudoprime to bases 2,3,5,7
    EXPECT_FALSE(is_probable_prime(~u128{0}));    // 2^128 - 1
}

TEST(Field, SampleCoversSmallField) {
    std::mt19937_64 rng(11);
    const Field f(5);
    std::array<int, 5> hits{};
    for (int i = 0; i < 200; ++i) {
        const Fe a = f.sample(rng);
        ASSERT_LT(a.v, 5u);
        ++hits[static_cast<std::size_t>(a.v)];
    }
    for (int h : hits) EXPECT_GT(h, 0);
}
