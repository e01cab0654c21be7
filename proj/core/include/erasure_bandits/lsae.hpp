#pragma once

#include <span>
#include <vector>

#include "erasure_bandits/policy.hpp"

namespace eb {

// Pulls per active arm in batch i: M_i = alpha * 4^i. Throws on overflow.
long long lsae_batch_size(long long alpha, int batch);

// Mean of the last half of a complete batch buffer; the first half is
// discarded so that, with high probability, no kept sample predates the
// last successful delivery of the block's instruction.
double second_half_mean(std::span<const double> rewards);

// Elimination margin at batch size M_i: 4 * sqrt(log(K*T) / M_i).
double lsae_threshold(long long num_arms, long long horizon, long long batch_pulls);

// Keeps the arms whose empirical mean is within `threshold` of the
// empirical best. `means` is aligned with `active`. Never empties the set.
std::vector<int> lsae_eliminate(const std::vector<int>& active,
                                std::span<const double> means,
                                double threshold);

// Lingering successive arm elimination. Batch i pulls every active arm
// M_i = alpha * 4^i consecutive times (ascending arm order), estimates each
// arm's mean from the second half of its block, and drops arms more than
// lsae_threshold below the empirical best. A batch cut off by the horizon
// performs no elimination.
class LsaePolicy : public Policy {
public:
    LsaePolicy(int num_arms, long long horizon, long long alpha);

    int select(long long t) override;
    void observe(int arm, double reward) override;

    const std::vector<int>& active_set() const { return active_; }
    int batch_index() const { return batch_; }
    long long batch_pulls() const { return batch_pulls_; }

private:
    void close_batch();

    int num_arms_;
    long long horizon_;
    long long alpha_;
    std::vector<int> active_;
    std::vector<std::vector<double>> buffers_;  // aligned with active_
    int batch_ = 1;
    long long batch_pulls_;
    std::size_t arm_cursor_ = 0;
    long long pull_cursor_ = 0;
};

}  // namespace eb
