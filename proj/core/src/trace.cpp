#include "erasure_bandits/trace.hpp"

#include <stdexcept>
#include <string>

namespace eb {

double compute_regret(const EpisodeTrace& trace, const BanditInstance& instance) {
    const double best = instance.best_mean();
    double total = 0.0;
    for (const RoundRecord& r : trace.rounds) {
        if (r.played < 1 || r.played > instance.num_arms()) {
            throw std::invalid_argument(
                "compute_regret: played arm " + std::to_string(r.played) +
                " does not fit a " + std::to_string(instance.num_arms()) +
                "-arm instance");
        }
        total += best - instance.mean(r.played);
    }
    return total;
}

}  // namespace eb
