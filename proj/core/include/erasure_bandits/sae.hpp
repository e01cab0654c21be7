#pragma once

#include <vector>

#include "erasure_bandits/policy.hpp"

namespace eb {

// Successive arm elimination without erasure protection: batch i pulls
// every active arm 4^i times (ascending arm order), estimates means from
// all samples of the batch, and drops arms whose deficit to the empirical
// best exceeds 2*sqrt(2*log(K*T)/4^i) -- the same confidence radius the
// lingering variant uses, at its full sample count.
class PlainSaePolicy : public Policy {
public:
    PlainSaePolicy(int num_arms, long long horizon);

    int select(long long t) override;
    void observe(int arm, double reward) override;

    const std::vector<int>& active_set() const { return active_; }
    int batch_index() const { return batch_; }

private:
    void close_batch();

    int num_arms_;
    long long horizon_;
    std::vector<int> active_;
    std::vector<double> sums_;  // aligned with active_, current batch only
    int batch_ = 1;
    long long batch_pulls_ = 4;
    std::size_t arm_cursor_ = 0;
    long long pull_cursor_ = 0;
};

}  // namespace eb
