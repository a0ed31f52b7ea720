#include "dcled/game.hpp"

#include "dcled/scheme2v.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace dcled {

namespace {

QuadraticProgram random_program(const Field& f, std::mt19937_64& rng, std::uint32_t n) {
    QuadraticProgram p;
    for (std::uint32_t i = 1; i <= n; ++i) p.labels.push_back("in" + std::to_string(i));
    std::uniform_int_distribution<std::uint32_t> idx(1, n);
    for (std::uint32_t t = 0; t < 2 * n; ++t) p.quad.push_back({idx(rng), idx(rng), f.sample(rng)});
    for (std::uint32_t t = 0; t < n; ++t) p.lin.push_back({idx(rng), f.sample(rng)});
    p.gamma = f.sample(rng);
    normalize(f, p);
    return p;
}

struct HonestRun {
    QuadraticProgram prog;
    VerifiableKey key;
    Poly c1, c2;
    Fe expected;
};

HonestRun honest_run(const Field& f, std::mt19937_64& rng, std::uint32_t n) {
    HonestRun run;
    run.prog = random_program(f, rng, n);
    run.key = {prf_key_from(rng), prf_key_from(rng), f.sample_nonzero(rng),
               f.sample_nonzero(rng)};
    std::vector<Fe> values(n);
    for (auto& v : values) v = f.sample(rng);
    std::vector<VShare1> sh1;
    std::vector<VShare2> sh2;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto [a, b] = vencrypt(f, run.key, run.prog.labels[i], values[i]);
        sh1.push_back(std::move(a));
        sh2.push_back(std::move(b));
    }
    run.c1 = veval1(f, run.prog, sh1);
    run.c2 = veval2(f, run.prog, sh2);
    run.expected = eval_plain(f, run.prog, values);
    return run;
}

}  // namespace

GameReport run_forgery_game(const Field& f, std::uint64_t seed, std::uint32_t forged_trials,
                            std::uint32_t honest_trials) {
    std::mt19937_64 rng(seed);
    GameReport report;
    report.seed = seed;

    // One fixed instance serves all forged trials: the adversary knows the
    // program and the honest transcript but not the key.
    const HonestRun target = honest_run(f, rng, 8);
    const Poly zero = poly_zero(3);
    for (std::uint32_t t = 0; t < forged_trials; ++t) {
        Poly forged{{f.sample(rng), f.sample(rng), f.sample(rng)}};
        if (t % 2 == 0) {
            const VerifyOutcome out = vdecrypt(f, target.key, target.prog, forged, zero);
            if (out.ok1) ++report.forged_accepted;
        } else {
            const VerifyOutcome out = vdecrypt(f, target.key, target.prog, zero, forged);
            if (out.ok2) ++report.forged_accepted;
        }
        ++report.forged_trials;
    }

    for (std::uint32_t t = 0; t < honest_trials; ++t) {
        const HonestRun run = honest_run(f, rng, 4);
        const VerifyOutcome out = vdecrypt(f, run.key, run.prog, run.c1, run.c2);
        if (out.accepted() && out.value == run.expected) ++report.honest_successes;
        ++report.honest_trials;
    }
    return report;
}

std::string to_csv(const GameReport& r) {
    std::ostringstream os;
    os << "seed,forged_trials,forged_accepted,honest_trials,honest_successes\n"
       << r.seed << ',' << r.forged_trials << ',' << r.forged_accepted << ',' << r.honest_trials
       << ',' << r.honest_successes << '\n';
    return os.str();
}

}  // namespace dcled
