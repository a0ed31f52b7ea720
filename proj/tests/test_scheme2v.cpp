#include "dcled/scheme2v.hpp"

#include "dcled/game.hpp"
#include "dcled/scheme2s.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dcled;

namespace {

QuadraticProgram random_quadratic(const Field& f, std::mt19937_64& rng, std::size_t n) {
    QuadraticProgram p;
    for (std::size_t i = 0; i < n; ++i) p.labels.push_back("v" + std::to_string(i));
    std::uniform_int_distribution<std::uint32_t> idx(1, static_cast<std::uint32_t>(n));
    for (std::size_t t = 0; t < 2 * n; ++t) p.quad.push_back({idx(rng), idx(rng), f.sample(rng)});
    for (std::size_t t = 0; t < n; ++t) p.lin.push_back({idx(rng), f.sample(rng)});
    p.gamma = f.sample(rng);
    normalize(f, p);
    return p;
}

struct VEncrypted {
    std::vector<VShare1> s1;
    std::vector<VShare2> s2;
};

VEncrypted vencrypt_all(const Field& f, const VerifiableKey& key, const QuadraticProgram& p,
                        const std::vector<Fe>& values) {
    VEncrypted e;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto [a, b] = vencrypt(f, key, p.labels[i], values[i]);
        e.s1.push_back(std::move(a));
        e.s2.push_back(std::move(b));
    }
    return e;
}

VerifiableKey key_from(std::mt19937_64& rng, const Field& f) {
    return {prf_key_from(rng), prf_key_from(rng), f.sample_nonzero(rng), f.sample_nonzero(rng)};
}

}  // namespace

TEST(Scheme2v, MakeTagFrozen) {
    const Field f(97);
    // payload 3, MAC value 10 at point 7: slope = (10-3)/7 = 7*inv(7)... = 1
    const Poly y = make_tag(f, Fe{3}, Fe{10}, Fe{7});
    EXPECT_EQ(y, poly_line(Fe{3}, Fe{1}));
    EXPECT_EQ(poly_eval(f, y, Fe{7}), Fe{10});
    EXPECT_EQ(poly_eval(f, y, f.zero()), Fe{3});

    // MAC value equal to the payload: constant tag.
    EXPECT_EQ(make_tag(f, Fe{5}, Fe{5}, Fe{7}), poly_line(Fe{5}, Fe{0}));
}

TEST(Scheme2v, Veval1FrozenProduct) {
    const Field f(97);
    QuadraticProgram p;
    p.labels = {"x1", "x2"};
    p.quad = {{1, 2, Fe{1}}};
    const std::vector<VShare1> shares{{poly_line(Fe{3}, Fe{1}), poly_line(Fe{1}, Fe{0})},
                                      {poly_line(Fe{2}, Fe{4}), poly_line(Fe{1}, Fe{0})}};
    // (3+1x)(2+4x) - (1+0x)(1+0x) = 5 + 14x + 4x^2
    EXPECT_EQ(veval1(f, p, shares), (Poly{{Fe{5}, Fe{14}, Fe{4}}}));
}

TEST(Scheme2v, ConstantTagsCollapseToUnverifiedEvaluation) {
    const Field f(97);
    std::mt19937_64 rng(3);
    const QuadraticProgram p = random_quadratic(f, rng, 5);
    std::vector<Share1> plain1;
    std::vector<Share2> plain2;
    std::vector<VShare1> tag1;
    std::vector<VShare2> tag2;
    for (std::size_t i = 0; i < 5; ++i) {
        const Share1 s1{f.sample(rng), f.sample(rng)};
        const Share2 s2{f.sample(rng), f.sample(rng)};
        plain1.push_back(s1);
        plain2.push_back(s2);
        tag1.push_back({poly_line(s1.u, Fe{0}), poly_line(s1.v, Fe{0})});
        tag2.push_back({poly_line(s2.w, Fe{0}), poly_line(s2.a, Fe{0})});
    }
    const Poly c1 = veval1(f, p, tag1);
    const Poly c2 = veval2(f, p, tag2);
    EXPECT_EQ(c1.c[0], eval1(f, p, plain1));
    EXPECT_EQ(c2.c[0], eval2(f, p, plain2));
    EXPECT_EQ(c1.c[1], f.zero());
    EXPECT_EQ(c1.c[2], f.zero());
    EXPECT_EQ(c2.c[1], f.zero());
    EXPECT_EQ(c2.c[2], f.zero());
}

TEST(Scheme2v, PayloadConsistencyUnderEncryption) {
    // The constant coefficient of each evaluated tag equals the unverified
    // server evaluation on the underlying payload shares.
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(17);
    for (int round = 0; round < 10; ++round) {
        const std::size_t n = 1 + rng() % 8;
        const QuadraticProgram p = random_quadratic(f, rng, n);
        const VerifiableKey key = key_from(rng, f);
        std::vector<Fe> values(n);
        for (auto& v : values) v = f.sample(rng);
        const VEncrypted e = vencrypt_all(f, key, p, values);

        std::vector<Share1> plain1;
        std::vector<Share2> plain2;
        for (std::size_t i = 0; i < n; ++i) {
            plain1.push_back({e.s1[i].y1.c[0], e.s1[i].y2.c[0]});
            plain2.push_back({e.s2[i].y3.c[0], e.s2[i].y4.c[0]});
        }
        EXPECT_EQ(veval1(f, p, e.s1).c[0], eval1(f, p, plain1));
        EXPECT_EQ(veval2(f, p, e.s2).c[0], eval2(f, p, plain2));
    }
}

TEST(Scheme2v, FreshTagsHitTheirMacPoints) {
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(23);
    const VerifiableKey key = key_from(rng, f);
    const Fe m = f.sample(rng);
    const auto [c1, c2] = vencrypt(f, key, "tau", m);
    const MaskPair mask = derive_masks(f, key.k1, "tau");

    EXPECT_EQ(poly_eval(f, c1.y1, f.zero()), f.sub(m, mask.a));
    EXPECT_EQ(poly_eval(f, c1.y2, f.zero()), f.sub(mask.a, mask.b));
    EXPECT_EQ(poly_eval(f, c2.y3, f.zero()), f.sub(m, mask.b));
    EXPECT_EQ(poly_eval(f, c2.y4, f.zero()), mask.a);

    EXPECT_EQ(poly_eval(f, c1.y1, key.s1), prf_eval(f, key.k2, "tau", 0));
    EXPECT_EQ(poly_eval(f, c1.y2, key.s1), prf_eval(f, key.k2, "tau", 1));
    EXPECT_EQ(poly_eval(f, c2.y3, key.s2), prf_eval(f, key.k2, "tau", 2));
    EXPECT_EQ(poly_eval(f, c2.y4, key.s2), prf_eval(f, key.k2, "tau", 3));
}

TEST(Scheme2v, EvaluatedTagAtVerificationPointMatchesMacCombination) {
    // Substituting the MAC values for the tags reproduces c2(s2) directly.
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(29);
    const std::size_t n = 6;
    const QuadraticProgram p = random_quadratic(f, rng, n);
    const VerifiableKey key = key_from(rng, f);
    std::vector<Fe> values(n);
    for (auto& v : values) v = f.sample(rng);
    const VEncrypted e = vencrypt_all(f, key, p, values);

    std::vector<Fe> r3(n), r4(n);
    for (std::size_t i = 0; i < n; ++i) {
        r3[i] = prf_eval(f, key.k2, p.labels[i], 2);
        r4[i] = prf_eval(f, key.k2, p.labels[i], 3);
    }
    Fe want = f.zero();
    for (const auto& t : p.quad)
        want = f.add(want, f.mul(t.alpha, f.add(f.mul(r3[t.i - 1], r4[t.j - 1]),
                                                f.mul(r4[t.i - 1], r3[t.j - 1]))));
    for (const auto& t : p.lin) want = f.add(want, f.mul(t.beta, r3[t.k - 1]));
    EXPECT_EQ(poly_eval(f, veval2(f, p, e.s2), key.s2), want);
}

TEST(Scheme2v, HonestEndToEndAcceptsAndMatchesOracle) {
    std::mt19937_64 rng(2027);
    for (const u128 pm : {u128{97}, Field::default_modulus()}) {
        const Field f(pm);
        for (int round = 0; round < 15; ++round) {
            const std::size_t n = 1 + rng() % 12;
            const QuadraticProgram p = random_quadratic(f, rng, n);
            const VerifiableKey key = key_from(rng, f);
            std::vector<Fe> values(n);
            for (auto& v : values) v = f.sample(rng);
            const VEncrypted e = vencrypt_all(f, key, p, values);
            const Poly c1 = veval1(f, p, e.s1);
            const Poly c2 = veval2(f, p, e.s2);
            const VerifyOutcome out = vdecrypt(f, key, p, c1, c2);
            ASSERT_TRUE(out.ok1);
            ASSERT_TRUE(out.ok2);
            EXPECT_EQ(out.value, eval_plain(f, p, values));
        }
    }
}

TEST(Scheme2v, LinearProgramsLeaveServerOneIdle) {
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(31);
    QuadraticProgram p;
    p.labels = {"x", "y"};
    p.lin = {{1, Fe{2}}, {2, Fe{3}}};
    p.gamma = Fe{7};
    const VerifiableKey key = key_from(rng, f);
    const std::vector<Fe> values{f.sample(rng), f.sample(rng)};
    const VEncrypted e = vencrypt_all(f, key, p, values);
    const Poly c1 = veval1(f, p, e.s1);
    EXPECT_EQ(c1, poly_zero(3));
    const Poly c2 = veval2(f, p, e.s2);
    ASSERT_EQ(c2.c.size(), 3u);
    EXPECT_EQ(c2.c[2], f.zero());  // degree 1 embedded in 3 coefficients
    const VerifyOutcome out = vdecrypt(f, key, p, c1, c2);
    ASSERT_TRUE(out.accepted());
    EXPECT_EQ(out.value, eval_plain(f, p, values));
}

TEST(Scheme2v, TamperedResponsesAreRejectedWithSideAttribution) {
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(37);
    const std::size_t n = 5;
    const QuadraticProgram p = random_quadratic(f, rng, n);
    const VerifiableKey key = key_from(rng, f);
    std::vector<Fe> values(n);
    for (auto& v : values) v = f.sample(rng);
    const VEncrypted e = vencrypt_all(f, key, p, values);
    const Poly c1 = veval1(f, p, e.s1);
    const Poly c2 = veval2(f, p, e.s2);

    Poly bad1 = c1;
    bad1.c[0] = f.add(bad1.c[0], f.one());
    const VerifyOutcome t1 = vdecrypt(f, key, p, bad1, c2);
    EXPECT_FALSE(t1.ok1);
    EXPECT_TRUE(t1.ok2);
    EXPECT_FALSE(t1.accepted());

    Poly bad2 = c2;
    bad2.c[1] = f.add(bad2.c[1], f.one());
    const VerifyOutcome t2 = vdecrypt(f, key, p, c1, bad2);
    EXPECT_TRUE(t2.ok1);
    EXPECT_FALSE(t2.ok2);

    // Zeroed responses against a program whose MAC combinations are nonzero.
    const VerifyOutcome t3 = vdecrypt(f, key, p, poly_zero(3), poly_zero(3));
    EXPECT_FALSE(t3.accepted());

    EXPECT_THROW((void)vdecrypt(f, key, p, poly_zero(2), c2), std::invalid_argument);
    EXPECT_THROW((void)vdecrypt(f, key, p, c1, poly_zero(4)), std::invalid_argument);
}

TEST(Scheme2v, SerializationRoundTripAndRejects) {
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(41);
    const VerifiableKey key = key_from(rng, f);
    const auto [s1, s2] = vencrypt(f, key, "tau", f.sample(rng));

    const auto b1 = serialize(f, s1);
    const auto b2 = serialize(f, s2);
    EXPECT_EQ(b1.size(), 1u + 2 * (1 + 2 * 16));  // share tag + two degree-1 tags
    EXPECT_EQ(parse_vshare1(f, b1), s1);
    EXPECT_EQ(parse_vshare2(f, b2), s2);

    EXPECT_THROW((void)parse_vshare1(f, b2), std::invalid_argument);
    EXPECT_THROW((void)parse_vshare2(f, b1), std::invalid_argument);
    auto truncated = b1;
    truncated.pop_back();
    EXPECT_THROW((void)parse_vshare1(f, truncated), std::invalid_argument);
    auto trailing = b1;
    trailing.push_back(0);
    EXPECT_THROW((void)parse_vshare1(f, trailing), std::invalid_argument);

    // An evaluated (3-coefficient) tag is not a valid fresh share.
    std::vector<std::uint8_t> evaluated{0x11};
    append_poly(f, poly_zero(3), evaluated);
    append_poly(f, poly_zero(2), evaluated);
    EXPECT_THROW((void)parse_vshare1(f, evaluated), std::invalid_argument);
}

TEST(Scheme2v, EvaluatedResponseSizeIsProgramIndependent) {
    const Field f(Field::default_modulus());
    std::mt19937_64 rng(43);
    const VerifiableKey key = key_from(rng, f);
    for (const std::size_t n : {std::size_t{1}, std::size_t{10}}) {
        QuadraticProgram p;
        for (std::size_t i = 0; i < n; ++i) p.labels.push_back("z" + std::to_string(i));
        for (std::uint32_t i = 1; i <= n; ++i)
            for (std::uint32_t j = i; j <= n; ++j) p.quad.push_back({i, j, f.one()});
        std::vector<Fe> values(n);
        for (auto& v : values) v = f.sample(rng);
        const VEncrypted e = vencrypt_all(f, key, p, values);
        EXPECT_EQ(serialize(f, veval1(f, p, e.s1)).size(), 1u + 3 * 16);
        EXPECT_EQ(serialize(f, veval2(f, p, e.s2)).size(), 1u + 3 * 16);
    }
}

TEST(Scheme2v, KeygenProducesNonzeroPointsAndFreshKeys) {
    const Field small(5);
    for (int i = 0; i < 100; ++i) {
        const VerifiableKey k = vkeygen(small);
        EXPECT_NE(k.s1, small.zero());
        EXPECT_NE(k.s2, small.zero());
    }
    const Field f(Field::default_modulus());
    const VerifiableKey a = vkeygen(f);
    const VerifiableKey b = vkeygen(f);
    EXPECT_NE(a.k1, b.k1);
    EXPECT_NE(a.k2, b.k2);
}

TEST(Scheme2v, ForgeryGameRejectsRandomTriples) {
    const Field f(Field::default_modulus());
    const GameReport r = run_forgery_game(f, 99, 2000, 100);
    EXPECT_EQ(r.forged_trials, 2000u);
    EXPECT_EQ(r.forged_accepted, 0u);
    EXPECT_EQ(r.honest_trials, 100u);
    EXPECT_EQ(r.honest_successes, 100u);
    EXPECT_TRUE(r.clean());

    // Deterministic under a fixed seed, and the CSV carries the numbers.
    EXPECT_EQ(to_csv(r), to_csv(run_forgery_game(f, 99, 2000, 100)));
    EXPECT_NE(to_csv(r).find("seed,forged_trials"), std::string::npos);
    EXPECT_NE(to_csv(r).find("99,2000,0,100,100"), std::string::npos);
}
