#pragma once

#include <vector>

#include "erasure_bandits/policy.hpp"

namespace eb {

// Optimism index rule: play any unpulled arm first (lowest index), then
// argmax of empirical mean + sqrt(scale * log t / n), ties to the lowest
// index. Natural log throughout.
class UcbPolicy : public Policy {
public:
    UcbPolicy(int num_arms, long long horizon, double exploration_scale = 2.0);

    int select(long long t) override;
    void observe(int arm, double reward) override;

    long long pull_count(int arm) const;
    double index(int arm, long long t) const;
    long long horizon() const { return horizon_; }

private:
    std::vector<long long> counts_;
    std::vector<double> sums_;
    long long horizon_;
    double scale_;
    long long observations_ = 0;
};

}  // namespace eb
