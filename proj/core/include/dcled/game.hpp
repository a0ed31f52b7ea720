#pragma once

#include "dcled/field.hpp"

#include <cstdint>
#include <string>

namespace dcled {

// Result of one run of the forgery game against the verifiable two-server
// scheme. A clean run accepts zero forgeries and every honest trial.
struct GameReport {
    std::uint64_t seed = 0;
    std::uint32_t forged_trials = 0;
    std::uint32_t forged_accepted = 0;
    std::uint32_t honest_trials = 0;
    std::uint32_t honest_successes = 0;

    bool clean() const {
        return forged_accepted == 0 && honest_successes == honest_trials;
    }
};

// Plays the forgery game, seeded for reproducibility. Forged trials submit a
// uniformly random 3-coefficient response for one server while the other
// server's response is zeroed, and the forgery counts as accepted if the
// forged side's MAC equation passes (the zeroed side is not judged; each
// equation is independent). Honest trials run the full pipeline on fresh
// random programs and count successes where the verified output matches
// plain evaluation.
GameReport run_forgery_game(const Field& f, std::uint64_t seed, std::uint32_t forged_trials,
                            std::uint32_t honest_trials);

// One CSV header line plus one row.
std::string to_csv(const GameReport& r);

}  // namespace dcled
