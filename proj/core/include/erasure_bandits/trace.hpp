#pragma once

#include <vector>

#include "erasure_bandits/bandit.hpp"

namespace eb {

struct RoundRecord {
    long long t = 0;  // 1-based round
    int sent = 0;
    bool erased = false;
    int played = 0;
    double reward = 0.0;
};

struct EpisodeTrace {
    long long horizon = 0;
    std::vector<RoundRecord> rounds;
};

// Cumulative regret sum_t (max_i mu_i - mu_played_t). Uses played arms,
// never sent arms. Throws if a played arm is out of range for the instance.
double compute_regret(const EpisodeTrace& trace, const BanditInstance& instance);

}  // namespace eb
