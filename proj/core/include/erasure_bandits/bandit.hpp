#pragma once

#include <vector>

#include "erasure_bandits/rng.hpp"

namespace eb {

enum class DistKind { kBernoulli, kDeterministic };

// Ground-truth K-armed instance: per-arm reward means in [0,1] plus the
// reward distribution kind. Arms are 1-based ids throughout the library.
class BanditInstance {
public:
    BanditInstance(std::vector<double> means, DistKind kind);

    int num_arms() const { return static_cast<int>(means_.size()); }
    DistKind dist_kind() const { return kind_; }
    const std::vector<double>& means() const { return means_; }

    double mean(int arm) const;       // throws std::out_of_range
    double best_mean() const { return best_mean_; }
    double gap(int arm) const { return best_mean_ - mean(arm); }

private:
    std::vector<double> means_;
    DistKind kind_;
    double best_mean_;
};

// One reward draw for `arm`. Bernoulli: 1 with probability mu_arm (one
// uniform draw consumed); Deterministic: exactly mu_arm, no draw.
double sample_reward(const BanditInstance& instance, int arm, RandomSource& rng);

// Expected observed reward when the agent replaces erased instructions by a
// uniformly random arm: (1-eps)*mu_arm + (eps/K)*sum_k mu_k.
double shifted_mean(const BanditInstance& instance, int arm, double epsilon);

}  // namespace eb
