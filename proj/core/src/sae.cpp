#include "erasure_bandits/sae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "erasure_bandits/lsae.hpp"

namespace eb {

PlainSaePolicy::PlainSaePolicy(int num_arms, long long horizon)
    : num_arms_(num_arms), horizon_(horizon) {
    if (num_arms < 1) throw std::invalid_argument("PlainSaePolicy: need at least one arm");
    if (num_arms_ * horizon_ < 2) {
        throw std::invalid_argument("PlainSaePolicy: K*T must be >= 2");
    }
    active_.resize(static_cast<std::size_t>(num_arms));
    std::iota(active_.begin(), active_.end(), 1);
    sums_.assign(active_.size(), 0.0);
}

int PlainSaePolicy::select(long long /*t*/) { return active_[arm_cursor_]; }

void PlainSaePolicy::observe(int arm, double reward) {
    if (arm != active_[arm_cursor_]) {
        throw std::logic_error("PlainSaePolicy: observed arm " + std::to_string(arm) +
                               " does not match the current block");
    }
    sums_[arm_cursor_] += reward;
    if (++pull_cursor_ == batch_pulls_) {
        pull_cursor_ = 0;
        if (++arm_cursor_ == active_.size()) close_batch();
    }
}

void PlainSaePolicy::close_batch() {
    std::vector<double> means(active_.size());
    for (std::size_t j = 0; j < active_.size(); ++j) {
        means[j] = sums_[j] / static_cast<double>(batch_pulls_);
    }
    const double threshold =
        2.0 * std::sqrt(2.0 *
                        std::log(static_cast<double>(num_arms_) *
                                 static_cast<double>(horizon_)) /
                        static_cast<double>(batch_pulls_));
    active_ = lsae_eliminate(active_, means, threshold);
    batch_++;
    if (batch_pulls_ > std::numeric_limits<long long>::max() / 4) {
        throw std::overflow_error("PlainSaePolicy: batch size overflows");
    }
    batch_pulls_ *= 4;
    arm_cursor_ = 0;
    sums_.assign(active_.size(), 0.0);
}

}  // namespace eb
