#include "erasure_bandits/bandit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace eb {

BanditInstance::BanditInstance(std::vector<double> means, DistKind kind)
    : means_(std::move(means)), kind_(kind) {
    if (means_.empty()) {
        throw std::invalid_argument("BanditInstance: need at least one arm");
    }
    for (double m : means_) {
        if (!(m >= 0.0 && m <= 1.0)) {
            throw std::invalid_argument("BanditInstance: arm mean " +
                                        std::to_string(m) + " outside [0,1]");
        }
    }
    best_mean_ = *std::max_element(means_.begin(), means_.end());
}

double BanditInstance::mean(int arm) const {
    if (arm < 1 || arm > num_arms()) {
        throw std::out_of_range("BanditInstance: arm " + std::to_string(arm) +
                                " outside [1," + std::to_string(num_arms()) + "]");
    }
    return means_[static_cast<std::size_t>(arm - 1)];
}

double sample_reward(const BanditInstance& instance, int arm, RandomSource& rng) {
    const double mu = instance.mean(arm);
    if (instance.dist_kind() == DistKind::kDeterministic) return mu;
    return rng.bernoulli(mu) ? 1.0 : 0.0;
}

double shifted_mean(const BanditInstance& instance, int arm, double epsilon) {
    const double mu = instance.mean(arm);
    double sum = 0.0;
    for (double m : instance.means()) sum += m;
    const int k = instance.num_arms();
    return (1.0 - epsilon) * mu + epsilon / static_cast<double>(k) * sum;
}

}  // namespace eb
