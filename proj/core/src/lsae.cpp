#include "erasure_bandits/lsae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eb {

long long lsae_batch_size(long long alpha, int batch) {
    if (alpha < 1) throw std::invalid_argument("lsae_batch_size: alpha must be >= 1");
    if (batch < 1) throw std::invalid_argument("lsae_batch_size: batch must be >= 1");
    long long pulls = alpha;
    for (int j = 0; j < batch; ++j) {
        if (pulls > std::numeric_limits<long long>::max() / 4) {
            throw std::overflow_error("lsae_batch_size: alpha*4^batch overflows");
        }
        pulls *= 4;
    }
    return pulls;
}

double second_half_mean(std::span<const double> rewards) {
    if (rewards.empty() || rewards.size() % 2 != 0) {
        throw std::logic_error("second_half_mean: buffer incomplete (size " +
                               std::to_string(rewards.size()) + ")");
    }
    const std::size_t half = rewards.size() / 2;
    double sum = 0.0;
    for (std::size_t j = half; j < rewards.size(); ++j) sum += rewards[j];
    return sum / static_cast<double>(half);
}

double lsae_threshold(long long num_arms, long long horizon, long long batch_pulls) {
    if (num_arms * horizon < 2) {
        throw std::invalid_argument("lsae_threshold: K*T must be >= 2");
    }
    if (batch_pulls < 1) throw std::invalid_argument("lsae_threshold: M_i must be >= 1");
    return 4.0 * std::sqrt(std::log(static_cast<double>(num_arms) *
                                    static_cast<double>(horizon)) /
                           static_cast<double>(batch_pulls));
}

std::vector<int> lsae_eliminate(const std::vector<int>& active,
                                std::span<const double> means,
                                double threshold) {
    if (active.empty()) throw std::logic_error("lsae_eliminate: empty active set");
    if (means.size() != active.size()) {
        throw std::invalid_argument("lsae_eliminate: means not aligned with active set");
    }
    const double best = *std::max_element(means.begin(), means.end());
    std::vector<int> kept;
    kept.reserve(active.size());
    for (std::size_t j = 0; j < active.size(); ++j) {
        if (best - means[j] <= threshold) kept.push_back(active[j]);
    }
    return kept;  // non-empty: the empirical best has deficit 0
}

LsaePolicy::LsaePolicy(int num_arms, long long horizon, long long alpha)
    : num_arms_(num_arms), horizon_(horizon), alpha_(alpha) {
    if (num_arms < 1) throw std::invalid_argument("LsaePolicy: need at least one arm");
    if (alpha < 1) throw std::invalid_argument("LsaePolicy: alpha must be >= 1");
    if (num_arms_ * horizon_ < 2) {
        throw std::invalid_argument("LsaePolicy: K*T must be >= 2");
    }
    active_.resize(static_cast<std::size_t>(num_arms));
    std::iota(active_.begin(), active_.end(), 1);
    batch_pulls_ = lsae_batch_size(alpha_, batch_);
    buffers_.assign(active_.size(), {});
}

int LsaePolicy::select(long long /*t*/) { return active_[arm_cursor_]; }

void LsaePolicy::observe(int arm, double reward) {
    if (arm != active_[arm_cursor_]) {
        throw std::logic_error("LsaePolicy: observed arm " + std::to_string(arm) +
                               " does not match the current block");
    }
    buffers_[arm_cursor_].push_back(reward);
    if (++pull_cursor_ == batch_pulls_) {
        pull_cursor_ = 0;
        if (++arm_cursor_ == active_.size()) close_batch();
    }
}

void LsaePolicy::close_batch() {
    std::vector<double> means(active_.size());
    for (std::size_t j = 0; j < active_.size(); ++j) {
        means[j] = second_half_mean(buffers_[j]);
    }
    active_ = lsae_eliminate(active_, means,
                             lsae_threshold(num_arms_, horizon_, batch_pulls_));
    batch_++;
    batch_pulls_ = lsae_batch_size(alpha_, batch_);
    arm_cursor_ = 0;
    buffers_.assign(active_.size(), {});
}

}  // namespace eb
