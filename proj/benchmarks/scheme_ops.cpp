// Microbenchmarks for the scheme bodies: server-side evaluation, client
// decryption, and the d-server cascade. Shares are prepared outside the
// timed loops; n counts program inputs, d counts servers.

#include "dcled/bench.hpp"
#include "dcled/field.hpp"
#include "dcled/prf.hpp"
#include "dcled/program.hpp"
#include "dcled/scheme2s.hpp"
#include "dcled/scheme2v.hpp"
#include "dcled/schemeds.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

namespace {

using dcled::Fe;
using dcled::Field;

const Field& field() {
    static const Field f(Field::default_modulus());
    return f;
}

std::vector<Fe> seeded_values(const Field& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Fe> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f.sample(rng));
    return out;
}

struct MaskedInstance {
    dcled::QuadraticProgram prog;
    std::vector<dcled::Share1> shares1;
    std::vector<dcled::Share2> shares2;
    dcled::TwoServerKey key;
};

MaskedInstance masked_instance(const Field& f, std::uint32_t n) {
    MaskedInstance inst;
    inst.prog = dcled::dense_program(f, n, 7);
    std::mt19937_64 rng(8);
    inst.key = dcled::TwoServerKey{dcled::prf_key_from(rng)};
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto pair =
            dcled::encrypt2s(f, inst.key, inst.prog.labels[i], f.sample(rng));
        inst.shares1.push_back(pair.first);
        inst.shares2.push_back(pair.second);
    }
    return inst;
}

void BM_Eval1(benchmark::State& state) {
    const Field& f = field();
    const auto inst = masked_instance(f, static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        const Fe c1 = dcled::eval1(f, inst.prog, inst.shares1);
        benchmark::DoNotOptimize(c1.v);
    }
}
BENCHMARK(BM_Eval1)->Arg(10)->Arg(100);

void BM_Eval2(benchmark::State& state) {
    const Field& f = field();
    const auto inst = masked_instance(f, static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        const Fe c2 = dcled::eval2(f, inst.prog, inst.shares2);
        benchmark::DoNotOptimize(c2.v);
    }
}
BENCHMARK(BM_Eval2)->Arg(10)->Arg(100);

void BM_Decrypt2s(benchmark::State& state) {
    const Field& f = field();
    const auto inst = masked_instance(f, static_cast<std::uint32_t>(state.range(0)));
    const Fe c1 = dcled::eval1(f, inst.prog, inst.shares1);
    const Fe c2 = dcled::eval2(f, inst.prog, inst.shares2);
    for (auto _ : state) {
        const Fe v = dcled::decrypt2s(f, inst.key, inst.prog, c1, c2);
        benchmark::DoNotOptimize(v.v);
    }
}
BENCHMARK(BM_Decrypt2s)->Arg(10)->Arg(100);

struct VerifiedInstance {
    dcled::QuadraticProgram prog;
    std::vector<dcled::VShare1> shares1;
    std::vector<dcled::VShare2> shares2;
    dcled::VerifiableKey key;
};

VerifiedInstance verified_instance(const Field& f, std::uint32_t n) {
    VerifiedInstance inst;
    inst.prog = dcled::dense_program(f, n, 9);
    inst.key = dcled::vkeygen(f);
    std::mt19937_64 rng(10);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto pair = dcled::vencrypt(f, inst.key, inst.prog.labels[i], f.sample(rng));
        inst.shares1.push_back(pair.first);
        inst.shares2.push_back(pair.second);
    }
    return inst;
}

void BM_VerifiedEval1(benchmark::State& state) {
    const Field& f = field();
    const auto inst = verified_instance(f, static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        const auto t1 = dcled::veval1(f, inst.prog, inst.shares1);
        benchmark::DoNotOptimize(t1.c.data());
    }
}
BENCHMARK(BM_VerifiedEval1)->Arg(10)->Arg(100);

void BM_VerifiedDecrypt(benchmark::State& state) {
    const Field& f = field();
    const auto inst = verified_instance(f, static_cast<std::uint32_t>(state.range(0)));
    const auto t1 = dcled::veval1(f, inst.prog, inst.shares1);
    const auto t2 = dcled::veval2(f, inst.prog, inst.shares2);
    for (auto _ : state) {
        const auto outcome = dcled::vdecrypt(f, inst.key, inst.prog, t1, t2);
        benchmark::DoNotOptimize(outcome.value.v);
    }
}
BENCHMARK(BM_VerifiedDecrypt)->Arg(10)->Arg(100);

// The cascade cost per server grows with the subset sums over stored rows.
void BM_ProductServerShare(benchmark::State& state) {
    const Field& f = field();
    const auto d = static_cast<std::uint32_t>(state.range(0));
    std::mt19937_64 rng(11);
    const dcled::PrfKey key = dcled::prf_key_from(rng);
    std::vector<std::string> labels;
    for (std::uint32_t i = 0; i < d; ++i) labels.push_back("m" + std::to_string(i + 1));
    const auto values = seeded_values(f, d, 12);
    const auto views = dcled::ds_encrypt(f, key, labels, values);
    for (auto _ : state) {
        const Fe sj = dcled::compute_Sj(f, views[0]);
        benchmark::DoNotOptimize(sj.v);
    }
}
BENCHMARK(BM_ProductServerShare)->DenseRange(2, 8);

void BM_ProductReconstruct(benchmark::State& state) {
    const Field& f = field();
    const auto d = static_cast<std::uint32_t>(state.range(0));
    std::mt19937_64 rng(13);
    const dcled::PrfKey key = dcled::prf_key_from(rng);
    std::vector<std::string> labels;
    for (std::uint32_t i = 0; i < d; ++i) labels.push_back("m" + std::to_string(i + 1));
    const auto values = seeded_values(f, d, 14);
    const auto views = dcled::ds_encrypt(f, key, labels, values);
    std::vector<Fe> sums;
    for (const auto& view : views) sums.push_back(dcled::compute_Sj(f, view));
    for (auto _ : state) {
        const Fe v = dcled::ds_reconstruct(f, key, labels, sums);
        benchmark::DoNotOptimize(v.v);
    }
}
BENCHMARK(BM_ProductReconstruct)->DenseRange(2, 8);

}  // namespace
