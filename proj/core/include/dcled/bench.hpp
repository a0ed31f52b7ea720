#pragma once

#include "dcled/field.hpp"
#include "dcled/program.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcled {

// Dense benchmark workload over n inputs labeled in1..inN: every pair term
// x_i x_j with i <= j (n(n+1)/2 of them), every linear term, and a constant,
// coefficients drawn uniformly from a generator seeded as given.
QuadraticProgram dense_program(const Field& f, std::uint32_t n, std::uint64_t seed);

// Median wall times in seconds for the algorithm bodies at one problem
// size. Key generation, encryption, and I/O are outside the timed regions.
struct BenchRow {
    std::string scheme;  // "2s" or "2v"
    std::uint32_t n = 0;
    std::size_t quad_terms = 0;
    std::size_t lin_terms = 0;
    double eval1_seconds = 0;
    double eval2_seconds = 0;
    double dec_seconds = 0;
    int reps = 0;
};

// In-process measurements over the given sizes, medians over `reps`
// repetitions (at least 5 for reportable numbers; smaller values are
// allowed for smoke runs). Every repetition cross-checks the decrypted
// value against plain evaluation and throws std::logic_error on mismatch.
std::vector<BenchRow> run_bench2s(const Field& f, std::span<const std::uint32_t> sizes, int reps,
                                  std::uint64_t seed);
std::vector<BenchRow> run_bench2v(const Field& f, std::span<const std::uint32_t> sizes, int reps,
                                  std::uint64_t seed);

// CSV with a header row. The seed and hardware note ride along on every row
// so a report replays without out-of-band context.
std::string bench_csv(std::span<const BenchRow> rows, std::uint64_t seed,
                      std::string_view hardware);

// Coefficient of determination of the least-squares line through (x, y).
// Needs at least two points; a constant series fits perfectly (1.0).
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

// Single-worker queue model for a burst of identical delegation requests:
// the service time is measured (median over reps of one request's compute:
// both server evaluations plus client decryption at size n), and with FIFO
// order the k-th of t requests completes at k * service, so the mean
// completion latency is service * (t + 1) / 2.
struct QueueReport {
    std::uint32_t n = 0;
    double service_seconds = 0;
    std::vector<std::uint64_t> t;
    std::vector<double> mean_completion_seconds;
};

QueueReport queue_sim(const Field& f, std::uint32_t n, std::span<const std::uint64_t> ts,
                      int reps, std::uint64_t seed);
std::string to_csv(const QueueReport& r);

}  // namespace dcled
