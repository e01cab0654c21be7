#pragma once

#include <cstdint>
#include <vector>

#include "erasure_bandits/bandit.hpp"
#include "erasure_bandits/schedule.hpp"
#include "erasure_bandits/trace.hpp"

namespace eb {

// M agents behind heterogeneous erasure channels, driven by one learner.
struct MultiAgentConfig {
    std::vector<double> epsilons;   // one per agent, each in [0,1)
    std::vector<long long> alphas;  // agent_repetitions(T, eps_m), input order
    int num_arms = 0;
    long long horizon = 0;

    static MultiAgentConfig make(std::vector<double> epsilons, int num_arms,
                                 long long horizon);

    int num_agents() const { return static_cast<int>(epsilons.size()); }
};

// Elimination margin after batch j (4^j effective pulls per action):
// 2 * sqrt(log(K*M*T) / (2 * 4^j)).
double ma_threshold(long long num_arms, long long num_agents, long long horizon,
                    int batch);

struct MaBatchStat {
    int batch = 0;
    int active_count = 0;       // actions entering the batch
    long long end_time = 0;     // scheduled batch length (untruncated)
    long long rounds_run = 0;   // rounds actually simulated
    double t_star = 0.0;
    double tau = 0.0;
    bool eliminated = false;    // false for the truncated final batch
    std::vector<int> active_after;
};

struct MaEpisodeResult {
    std::vector<EpisodeTrace> agent_traces;  // horizon rounds each
    std::vector<MaBatchStat> batch_stats;
    std::vector<int> final_active;
    double total_regret = 0.0;
};

// Batched elimination across the agents. Batch i = 1, 2, ... schedules
// 4^i effective pulls of every active action via schedule_batch, plays the
// timelines over the per-agent channels (LastReceived agents), credits each
// scheduled effective slot's reward to its action, and drops actions whose
// empirical deficit exceeds ma_threshold. The batch cut off by the horizon
// performs no elimination. Regret sums over all agents' played arms.
MaEpisodeResult ma_run(const MultiAgentConfig& config,
                       const BanditInstance& instance,
                       std::uint64_t seed);

}  // namespace eb
