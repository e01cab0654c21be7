#include "erasure_bandits/ucb.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace eb {

UcbPolicy::UcbPolicy(int num_arms, long long horizon, double exploration_scale)
    : counts_(static_cast<std::size_t>(num_arms), 0),
      sums_(static_cast<std::size_t>(num_arms), 0.0),
      horizon_(horizon),
      scale_(exploration_scale) {
    if (num_arms < 1) throw std::invalid_argument("UcbPolicy: need at least one arm");
    if (horizon < 0) throw std::invalid_argument("UcbPolicy: negative horizon");
}

double UcbPolicy::index(int arm, long long t) const {
    const std::size_t a = static_cast<std::size_t>(arm - 1);
    if (counts_[a] == 0) return std::numeric_limits<double>::infinity();
    const double mean = sums_[a] / static_cast<double>(counts_[a]);
    const double bonus =
        std::sqrt(scale_ * std::log(static_cast<double>(t)) / static_cast<double>(counts_[a]));
    return mean + bonus;
}

int UcbPolicy::select(long long t) {
    for (std::size_t a = 0; a < counts_.size(); ++a) {
        if (counts_[a] == 0) return static_cast<int>(a) + 1;
    }
    int best = 1;
    double best_index = index(1, t);
    for (int arm = 2; arm <= static_cast<int>(counts_.size()); ++arm) {
        const double idx = index(arm, t);
        if (idx > best_index) {
            best_index = idx;
            best = arm;
        }
    }
    return best;
}

void UcbPolicy::observe(int arm, double reward) {
    if (arm < 1 || arm > static_cast<int>(counts_.size())) {
        throw std::out_of_range("UcbPolicy: arm " + std::to_string(arm) + " out of range");
    }
    if (!(reward >= 0.0 && reward <= 1.0)) {
        throw std::domain_error("UcbPolicy: reward " + std::to_string(reward) +
                                " outside [0,1]");
    }
    counts_[static_cast<std::size_t>(arm - 1)]++;
    sums_[static_cast<std::size_t>(arm - 1)] += reward;
    observations_++;
}

long long UcbPolicy::pull_count(int arm) const {
    return counts_.at(static_cast<std::size_t>(arm - 1));
}

}  // namespace eb
