#include "erasure_bandits/multi_agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "erasure_bandits/agent.hpp"
#include "erasure_bandits/channel.hpp"
#include "erasure_bandits/lsae.hpp"

namespace eb {

MultiAgentConfig MultiAgentConfig::make(std::vector<double> epsilons, int num_arms,
                                        long long horizon) {
    if (epsilons.empty()) {
        throw std::invalid_argument("MultiAgentConfig: need at least one agent");
    }
    if (num_arms < 1) throw std::invalid_argument("MultiAgentConfig: need at least one arm");
    if (horizon < 0) throw std::invalid_argument("MultiAgentConfig: negative horizon");
    MultiAgentConfig config;
    config.num_arms = num_arms;
    config.horizon = horizon;
    config.alphas.reserve(epsilons.size());
    for (double eps : epsilons) {
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw std::invalid_argument("MultiAgentConfig: epsilon " +
                                        std::to_string(eps) + " must lie in [0,1)");
        }
        config.alphas.push_back(horizon == 0 ? 0 : agent_repetitions(horizon, eps));
    }
    config.epsilons = std::move(epsilons);
    return config;
}

double ma_threshold(long long num_arms, long long num_agents, long long horizon,
                    int batch) {
    if (num_arms * num_agents * horizon < 2) {
        throw std::invalid_argument("ma_threshold: K*M*T must be >= 2");
    }
    if (batch < 1) throw std::invalid_argument("ma_threshold: batch must be >= 1");
    const double samples = 2.0 * static_cast<double>(1LL << (2 * batch));
    const double kmt = static_cast<double>(num_arms) * static_cast<double>(num_agents) *
                       static_cast<double>(horizon);
    return 2.0 * std::sqrt(std::log(kmt) / samples);
}

MaEpisodeResult ma_run(const MultiAgentConfig& config,
                       const BanditInstance& instance,
                       std::uint64_t seed) {
    const int num_agents = config.num_agents();
    const int num_arms = config.num_arms;
    const long long horizon = config.horizon;
    if (instance.num_arms() != num_arms) {
        throw std::invalid_argument("ma_run: instance has " +
                                    std::to_string(instance.num_arms()) +
                                    " arms, config expects " + std::to_string(num_arms));
    }

    MaEpisodeResult result;
    result.agent_traces.assign(static_cast<std::size_t>(num_agents), EpisodeTrace{});
    for (EpisodeTrace& trace : result.agent_traces) trace.horizon = horizon;
    result.final_active.resize(static_cast<std::size_t>(num_arms));
    std::iota(result.final_active.begin(), result.final_active.end(), 1);
    if (horizon == 0) return result;

    // Scheduling works on agents sorted ascending by alpha; channels and
    // random streams stay keyed by the original agent index.
    std::vector<int> order(static_cast<std::size_t>(num_agents));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return config.alphas[static_cast<std::size_t>(a)] <
               config.alphas[static_cast<std::size_t>(b)];
    });
    std::vector<long long> sorted_alphas;
    sorted_alphas.reserve(order.size());
    for (int orig : order) sorted_alphas.push_back(config.alphas[static_cast<std::size_t>(orig)]);

    RandomSource schedule_rng(mix_seed(seed, 0));
    std::vector<RandomSource> agent_rngs;
    std::vector<ErasureChannel> channels;
    std::vector<AgentState> agents;
    agent_rngs.reserve(static_cast<std::size_t>(num_agents));
    channels.reserve(static_cast<std::size_t>(num_agents));
    for (int m = 0; m < num_agents; ++m) {
        agent_rngs.emplace_back(mix_seed(seed, 1 + static_cast<std::uint64_t>(m)));
        channels.emplace_back(config.epsilons[static_cast<std::size_t>(m)]);
        agents.push_back(AgentState::last_received());
    }
    std::vector<int> last_sent(static_cast<std::size_t>(num_agents), 0);

    std::vector<int> active = result.final_active;
    std::vector<double> reward_sums(static_cast<std::size_t>(num_arms) + 1, 0.0);
    std::vector<long long> reward_counts(static_cast<std::size_t>(num_arms) + 1, 0);

    long long used = 0;
    for (int batch = 1; used < horizon; ++batch) {
        const BatchSchedule schedule =
            schedule_batch(active, sorted_alphas, batch, schedule_rng);
        const long long rounds = std::min(schedule.end_time, horizon - used);
        const bool complete = rounds == schedule.end_time;

        std::fill(reward_sums.begin(), reward_sums.end(), 0.0);
        std::fill(reward_counts.begin(), reward_counts.end(), 0);

        for (int pos = 0; pos < num_agents; ++pos) {
            const int orig = order[static_cast<std::size_t>(pos)];
            const AgentTimeline& timeline = schedule.agents[static_cast<std::size_t>(pos)];
            RandomSource& rng = agent_rngs[static_cast<std::size_t>(orig)];

            // Instruction per slot; 0 marks "effective for no action".
            std::vector<int> instr(static_cast<std::size_t>(rounds), 0);
            std::vector<int> effective(static_cast<std::size_t>(rounds), 0);
            for (const ScheduleSegment& seg : timeline.segments) {
                const long long len = timeline.alpha + seg.effective_pulls;
                for (long long s = seg.start; s < seg.start + len && s < rounds; ++s) {
                    instr[static_cast<std::size_t>(s)] = seg.action;
                    if (s >= seg.start + timeline.alpha) {
                        effective[static_cast<std::size_t>(s)] = seg.action;
                    }
                }
            }
            if (timeline.busy_until < rounds) {
                // Idle tail: keep sending whatever this agent saw last; a
                // fresh agent with no history gets a uniform active action.
                int carry = !timeline.segments.empty()
                                ? timeline.segments.back().action
                                : last_sent[static_cast<std::size_t>(orig)];
                if (carry == 0) {
                    carry = active[static_cast<std::size_t>(
                        rng.next_below(active.size()))];
                }
                for (long long s = timeline.busy_until; s < rounds; ++s) {
                    instr[static_cast<std::size_t>(s)] = carry;
                }
            }

            EpisodeTrace& trace = result.agent_traces[static_cast<std::size_t>(orig)];
            for (long long s = 0; s < rounds; ++s) {
                const int sent = instr[static_cast<std::size_t>(s)];
                const Delivery delivery =
                    channels[static_cast<std::size_t>(orig)].transmit(sent, rng);
                const int played =
                    agents[static_cast<std::size_t>(orig)].step(delivery, rng, num_arms);
                const double reward = sample_reward(instance, played, rng);
                trace.rounds.push_back(
                    RoundRecord{used + s + 1, sent, delivery.erased, played, reward});
                const int eff = effective[static_cast<std::size_t>(s)];
                if (complete && eff != 0) {
                    reward_sums[static_cast<std::size_t>(eff)] += reward;
                    reward_counts[static_cast<std::size_t>(eff)]++;
                }
            }
            last_sent[static_cast<std::size_t>(orig)] =
                instr[static_cast<std::size_t>(rounds - 1)];
        }

        MaBatchStat stat;
        stat.batch = batch;
        stat.active_count = static_cast<int>(active.size());
        stat.end_time = schedule.end_time;
        stat.rounds_run = rounds;
        stat.t_star = schedule.t_star;
        stat.tau = schedule.tau;
        stat.eliminated = complete;
        used += rounds;

        if (complete) {
            std::vector<double> means(active.size());
            for (std::size_t j = 0; j < active.size(); ++j) {
                const std::size_t a = static_cast<std::size_t>(active[j]);
                if (reward_counts[a] != schedule.pulls_per_action) {
                    throw std::logic_error("ma_run: action " + std::to_string(active[j]) +
                                           " collected " + std::to_string(reward_counts[a]) +
                                           " effective pulls, expected " +
                                           std::to_string(schedule.pulls_per_action));
                }
                means[j] = reward_sums[a] / static_cast<double>(reward_counts[a]);
            }
            active = lsae_eliminate(active, means,
                                    ma_threshold(num_arms, num_agents, horizon, batch));
        }
        stat.active_after = active;
        result.batch_stats.push_back(stat);
        if (!complete) break;
    }

    result.final_active = active;
    for (const EpisodeTrace& trace : result.agent_traces) {
        result.total_regret += compute_regret(trace, instance);
    }
    return result;
}

}  // namespace eb
