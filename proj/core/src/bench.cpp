#include "dcled/bench.hpp"

#include "dcled/poly.hpp"
#include "dcled/prf.hpp"
#include "dcled/scheme2s.hpp"
#include "dcled/scheme2v.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dcled {

namespace {

template <class Fn>
double time_once(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

std::vector<Fe> sample_values(const Field& f, std::uint32_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Fe> values;
    values.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) values.push_back(f.sample(rng));
    return values;
}

void append_seconds(std::ostringstream& out, double seconds) {
    out << std::fixed << std::setprecision(9) << seconds;
}

}  // namespace

QuadraticProgram dense_program(const Field& f, std::uint32_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("dense program needs at least one input");
    std::mt19937_64 rng(seed);
    QuadraticProgram p;
    p.labels.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i) p.labels.push_back("in" + std::to_string(i));
    p.quad.reserve(std::size_t{n} * (n + 1) / 2);
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i; j <= n; ++j) p.quad.push_back({i, j, f.sample(rng)});
    p.lin.reserve(n);
    for (std::uint32_t k = 1; k <= n; ++k) p.lin.push_back({k, f.sample(rng)});
    p.gamma = f.sample(rng);
    validate(f, p);
    return p;
}

std::vector<BenchRow> run_bench2s(const Field& f, std::span<const std::uint32_t> sizes, int reps,
                                  std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("need at least one repetition");
    std::vector<BenchRow> rows;
    for (const std::uint32_t n : sizes) {
        const QuadraticProgram p = dense_program(f, n, seed);
        const std::vector<Fe> values = sample_values(f, n, seed ^ 0x76616c75u);
        std::mt19937_64 krng(seed ^ 0x6b657973u);
        const TwoServerKey key{prf_key_from(krng)};

        std::vector<Share1> s1;
        std::vector<Share2> s2;
        for (std::uint32_t i = 0; i < n; ++i) {
            const auto [a, b] = encrypt2s(f, key, p.labels[i], values[i]);
            s1.push_back(a);
            s2.push_back(b);
        }
        const Fe expect = eval_plain(f, p, values);

        std::vector<double> t1, t2, t3;
        for (int r = 0; r < reps; ++r) {
            Fe c1, c2, got;
            t1.push_back(time_once([&] { c1 = eval1(f, p, s1); }));
            t2.push_back(time_once([&] { c2 = eval2(f, p, s2); }));
            t3.push_back(time_once([&] { got = decrypt2s(f, key, p, c1, c2); }));
            if (got != expect) throw std::logic_error("benchmark self-check failed");
        }
        rows.push_back({"2s", n, p.quad.size(), p.lin.size(), median(t1), median(t2), median(t3),
                        reps});
    }
    return rows;
}

std::vector<BenchRow> run_bench2v(const Field& f, std::span<const std::uint32_t> sizes, int reps,
                                  std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("need at least one repetition");
    std::vector<BenchRow> rows;
    for (const std::uint32_t n : sizes) {
        const QuadraticProgram p = dense_program(f, n, seed);
        const std::vector<Fe> values = sample_values(f, n, seed ^ 0x76616c75u);
        std::mt19937_64 krng(seed ^ 0x6b657973u);
        VerifiableKey key;
        key.k1 = prf_key_from(krng);
        key.k2 = prf_key_from(krng);
        key.s1 = f.sample_nonzero(krng);
        key.s2 = f.sample_nonzero(krng);

        std::vector<VShare1> s1;
        std::vector<VShare2> s2;
        for (std::uint32_t i = 0; i < n; ++i) {
            auto [a, b] = vencrypt(f, key, p.labels[i], values[i]);
            s1.push_back(std::move(a));
            s2.push_back(std::move(b));
        }
        const Fe expect = eval_plain(f, p, values);

        std::vector<double> t1, t2, t3;
        for (int r = 0; r < reps; ++r) {
            Poly c1, c2;
            VerifyOutcome out;
            t1.push_back(time_once([&] { c1 = veval1(f, p, s1); }));
            t2.push_back(time_once([&] { c2 = veval2(f, p, s2); }));
            t3.push_back(time_once([&] { out = vdecrypt(f, key, p, c1, c2); }));
            if (!out.accepted() || out.value != expect)
                throw std::logic_error("benchmark self-check failed");
        }
        rows.push_back({"2v", n, p.quad.size(), p.lin.size(), median(t1), median(t2), median(t3),
                        reps});
    }
    return rows;
}

std::string bench_csv(std::span<const BenchRow> rows, std::uint64_t seed,
                      std::string_view hardware) {
    std::ostringstream out;
    out << "scheme,n,quad_terms,lin_terms,eval1_seconds,eval2_seconds,dec_seconds,reps,seed,"
           "hardware\n";
    for (const BenchRow& r : rows) {
        out << r.scheme << ',' << r.n << ',' << r.quad_terms << ',' << r.lin_terms << ',';
        append_seconds(out, r.eval1_seconds);
        out << ',';
        append_seconds(out, r.eval2_seconds);
        out << ',';
        append_seconds(out, r.dec_seconds);
        out << ',' << r.reps << ',' << seed << ',' << hardware << '\n';
    }
    return out.str();
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("series lengths differ");
    if (x.size() < 2) throw std::invalid_argument("need at least two points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("x values are all equal");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    const double mean = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (slope * x[i] + intercept);
        ss_res += e * e;
        const double d = y[i] - mean;
        ss_tot += d * d;
    }
    if (ss_tot == 0) return 1.0;  // constant series: the flat line is exact
    return 1.0 - ss_res / ss_tot;
}

QueueReport queue_sim(const Field& f, std::uint32_t n, std::span<const std::uint64_t> ts,
                      int reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("need at least one repetition");
    const QuadraticProgram p = dense_program(f, n, seed);
    const std::vector<Fe> values = sample_values(f, n, seed ^ 0x76616c75u);
    std::mt19937_64 krng(seed ^ 0x6b657973u);
    const TwoServerKey key{prf_key_from(krng)};

    std::vector<Share1> s1;
    std::vector<Share2> s2;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto [a, b] = encrypt2s(f, key, p.labels[i], values[i]);
        s1.push_back(a);
        s2.push_back(b);
    }
    const Fe expect = eval_plain(f, p, values);

    // One request's compute: both server evaluations plus the decryption.
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
        Fe got;
        times.push_back(time_once([&] {
            const Fe c1 = eval1(f, p, s1);
            const Fe c2 = eval2(f, p, s2);
            got = decrypt2s(f, key, p, c1, c2);
        }));
        if (got != expect) throw std::logic_error("queue model self-check failed");
    }

    QueueReport report;
    report.n = n;
    report.service_seconds = median(times);
    for (const std::uint64_t t : ts) {
        if (t == 0) throw std::invalid_argument("queue depth must be positive");
        report.t.push_back(t);
        report.mean_completion_seconds.push_back(report.service_seconds *
                                                 (static_cast<double>(t) + 1) / 2);
    }
    return report;
}

std::string to_csv(const QueueReport& r) {
    std::ostringstream out;
    out << "n,t,service_seconds,mean_completion_seconds\n";
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        out << r.n << ',' << r.t[i] << ',';
        append_seconds(out, r.service_seconds);
        out << ',';
        append_seconds(out, r.mean_completion_seconds[i]);
        out << '\n';
    }
    return out.str();
}

}  // namespace dcled
