// Microbenchmarks for the arithmetic and PRF primitives. Each iteration
// performs one operation, chained through a live value so the work cannot
// be hoisted out of the loop.

#include "dcled/field.hpp"
#include "dcled/prf.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using dcled::Fe;
using dcled::Field;

// The default modulus 2^128 - 159 reduces by folding; forcing Montgomery on
// the same modulus shows what the strategy choice buys.
const Field& folded_field() {
    static const Field f(Field::default_modulus());
    return f;
}

const Field& montgomery_field() {
    static const Field f(Field::default_modulus(), Field::Reduction::montgomery);
    return f;
}

Fe seeded_element(const Field& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return f.sample_nonzero(rng);
}

void BM_MulFolded(benchmark::State& state) {
    const Field& f = folded_field();
    Fe x = seeded_element(f, 1);
    const Fe y = seeded_element(f, 2);
    for (auto _ : state) {
        x = f.mul(x, y);
        benchmark::DoNotOptimize(x.v);
    }
}
BENCHMARK(BM_MulFolded);

void BM_MulMontgomery(benchmark::State& state) {
    const Field& f = montgomery_field();
    Fe x = seeded_element(f, 1);
    const Fe y = seeded_element(f, 2);
    for (auto _ : state) {
        x = f.mul(x, y);
        benchmark::DoNotOptimize(x.v);
    }
}
BENCHMARK(BM_MulMontgomery);

void BM_Add(benchmark::State& state) {
    const Field& f = folded_field();
    Fe x = seeded_element(f, 1);
    const Fe y = seeded_element(f, 2);
    for (auto _ : state) {
        x = f.add(x, y);
        benchmark::DoNotOptimize(x.v);
    }
}
BENCHMARK(BM_Add);

void BM_Inv(benchmark::State& state) {
    const Field& f = folded_field();
    Fe x = seeded_element(f, 3);
    for (auto _ : state) {
        x = f.inv(x);
        benchmark::DoNotOptimize(x.v);
    }
}
BENCHMARK(BM_Inv);

void BM_Cmac(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const dcled::PrfKey key = dcled::prf_key_from(rng);
    std::array<std::uint8_t, 21> msg{};
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
    for (auto _ : state) {
        const auto mac = dcled::aes128_cmac(key.bytes, msg);
        benchmark::DoNotOptimize(mac[0]);
    }
}
BENCHMARK(BM_Cmac);

// One mask derivation: CMAC plus the reduction into Z_p. The per-label cost
// of encryption and of mask regeneration during decryption.
void BM_PrfMask(benchmark::State& state) {
    const Field& f = folded_field();
    std::mt19937_64 rng(5);
    const dcled::PrfKey key = dcled::prf_key_from(rng);
    unsigned index = 0;
    for (auto _ : state) {
        const Fe m = dcled::prf_eval(f, key, "sensor-000017", index++ & 1u);
        benchmark::DoNotOptimize(m.v);
    }
}
BENCHMARK(BM_PrfMask);

}  // namespace
