#include "erasure_bandits/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "erasure_bandits/channel.hpp"
#include "erasure_bandits/lsae.hpp"
#include "erasure_bandits/policy.hpp"
#include "erasure_bandits/repeat.hpp"
#include "erasure_bandits/sae.hpp"
#include "erasure_bandits/ucb.hpp"

namespace eb {

const char* policy_kind_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::kUcb: return "ucb";
        case PolicyKind::kSae: return "sae";
        case PolicyKind::kUcbRepeat: return "ucb_repeat";
        case PolicyKind::kSaeRepeat: return "sae_repeat";
        case PolicyKind::kLsae: return "lsae";
        case PolicyKind::kMultiAgent: return "multiagent";
    }
    return "?";
}

std::vector<long long> default_checkpoints(long long horizon) {
    std::vector<long long> points;
    for (long long p = 1; p <= horizon && p > 0; p *= 2) points.push_back(p);
    if (horizon > 0 && (points.empty() || points.back() != horizon)) {
        points.push_back(horizon);
    }
    return points;
}

std::vector<long long> ExperimentSetup::effective_checkpoints() const {
    return checkpoints.empty() ? default_checkpoints(horizon) : checkpoints;
}

void ExperimentSetup::validate() const {
    if (horizon < 0) throw std::invalid_argument("setup: negative horizon");
    if (reps < 1) throw std::invalid_argument("setup: reps must be >= 1");
    if (epsilons.empty()) throw std::invalid_argument("setup: no channel epsilon given");
    for (double eps : epsilons) {
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw std::invalid_argument("setup: epsilon " + std::to_string(eps) +
                                        " must lie in [0,1)");
        }
    }
    if (policy == PolicyKind::kMultiAgent) {
        if (fallback != FallbackKind::kLastReceived) {
            throw std::invalid_argument(
                "setup: multi-agent runs require the last_received fallback");
        }
    } else if (epsilons.size() != 1) {
        throw std::invalid_argument(
            "setup: multiple epsilons are only valid with policy=multiagent");
    }
    if (fallback == FallbackKind::kFixedArm &&
        (fixed_arm < 1 || fixed_arm > instance.num_arms())) {
        throw std::invalid_argument("setup: fixed arm " + std::to_string(fixed_arm) +
                                    " outside [1," +
                                    std::to_string(instance.num_arms()) + "]");
    }
    if (!(c_prime > 0.0)) throw std::invalid_argument("setup: c_prime must be > 0");
    long long prev = 0;
    for (long long t : checkpoints) {
        if (t <= prev || t > horizon) {
            throw std::invalid_argument(
                "setup: checkpoints must be strictly increasing in [1,T]");
        }
        prev = t;
    }
}

BanditInstance lower_bound_instance(int num_arms, int best_arm) {
    if (best_arm < 1 || best_arm > num_arms) {
        throw std::out_of_range("lower_bound_instance: best arm " +
                                std::to_string(best_arm) + " outside [1," +
                                std::to_string(num_arms) + "]");
    }
    std::vector<double> means(static_cast<std::size_t>(num_arms), 0.0);
    means[static_cast<std::size_t>(best_arm - 1)] = 1.0;
    return BanditInstance(std::move(means), DistKind::kDeterministic);
}

namespace {

void fnv_append(std::uint64_t& hash, const std::string& token) {
    for (unsigned char c : token) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    hash ^= '|';
    hash *= 0x100000001b3ull;
}

std::string format_full(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::unique_ptr<Policy> make_policy(const ExperimentSetup& setup) {
    const int num_arms = setup.instance.num_arms();
    const long long horizon = setup.horizon;
    switch (setup.policy) {
        case PolicyKind::kUcb:
            return std::make_unique<UcbPolicy>(num_arms, horizon);
        case PolicyKind::kSae:
            return std::make_unique<PlainSaePolicy>(num_arms, horizon);
        case PolicyKind::kUcbRepeat: {
            const int alpha = repetition_parameter(horizon, setup.epsilon());
            const long long inner_horizon = (horizon + alpha - 1) / alpha;
            return std::make_unique<RepeatWrapper>(
                std::make_unique<UcbPolicy>(num_arms, inner_horizon), alpha);
        }
        case PolicyKind::kSaeRepeat: {
            const int alpha = repetition_parameter(horizon, setup.epsilon());
            const long long inner_horizon = (horizon + alpha - 1) / alpha;
            return std::make_unique<RepeatWrapper>(
                std::make_unique<PlainSaePolicy>(num_arms, inner_horizon), alpha);
        }
        case PolicyKind::kLsae: {
            const int alpha = repetition_parameter(horizon, setup.epsilon());
            return std::make_unique<LsaePolicy>(num_arms, horizon, alpha);
        }
        case PolicyKind::kMultiAgent:
            break;
    }
    throw std::logic_error("make_policy: multi-agent episodes have no single policy");
}

AgentState make_agent(const ExperimentSetup& setup) {
    switch (setup.fallback) {
        case FallbackKind::kLastReceived: return AgentState::last_received();
        case FallbackKind::kRandomOnErasure: return AgentState::random_on_erasure();
        case FallbackKind::kFixedArm: return AgentState::fixed_arm(setup.fixed_arm);
    }
    return AgentState::last_received();
}

}  // namespace

std::string setup_fingerprint(const ExperimentSetup& setup) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    fnv_append(hash, policy_kind_name(setup.policy));
    fnv_append(hash, setup.instance.dist_kind() == DistKind::kBernoulli ? "bernoulli"
                                                                        : "deterministic");
    for (double m : setup.instance.means()) fnv_append(hash, format_full(m));
    for (double e : setup.epsilons) fnv_append(hash, format_full(e));
    switch (setup.fallback) {
        case FallbackKind::kLastReceived: fnv_append(hash, "last_received"); break;
        case FallbackKind::kRandomOnErasure: fnv_append(hash, "random_on_erasure"); break;
        case FallbackKind::kFixedArm:
            fnv_append(hash, "fixed_arm:" + std::to_string(setup.fixed_arm));
            break;
    }
    fnv_append(hash, std::to_string(setup.horizon));
    fnv_append(hash, format_full(setup.c_prime));
    for (long long t : setup.effective_checkpoints()) fnv_append(hash, std::to_string(t));
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

EpisodeResult run_episode(const ExperimentSetup& setup, std::uint64_t seed) {
    setup.validate();
    const std::vector<long long> points = setup.effective_checkpoints();
    EpisodeResult result;

    if (setup.policy == PolicyKind::kMultiAgent) {
        const MultiAgentConfig config = MultiAgentConfig::make(
            setup.epsilons, setup.instance.num_arms(), setup.horizon);
        MaEpisodeResult ma = ma_run(config, setup.instance, seed);
        std::vector<double> per_round(static_cast<std::size_t>(setup.horizon), 0.0);
        for (const EpisodeTrace& trace : ma.agent_traces) {
            for (const RoundRecord& r : trace.rounds) {
                per_round[static_cast<std::size_t>(r.t - 1)] +=
                    setup.instance.gap(r.played);
            }
        }
        double running = 0.0;
        std::size_t next = 0;
        for (long long t = 1; t <= setup.horizon; ++t) {
            running += per_round[static_cast<std::size_t>(t - 1)];
            if (next < points.size() && t == points[next]) {
                result.checkpoint_regret.push_back(running);
                ++next;
            }
        }
        result.traces = std::move(ma.agent_traces);
        result.regret = ma.total_regret;
        return result;
    }

    EpisodeTrace trace;
    trace.horizon = setup.horizon;
    trace.rounds.reserve(static_cast<std::size_t>(setup.horizon));
    if (setup.horizon > 0) {
        std::unique_ptr<Policy> policy = make_policy(setup);
        const ErasureChannel channel(setup.epsilon());
        AgentState agent = make_agent(setup);
        RandomSource rng(seed);
        const int num_arms = setup.instance.num_arms();

        double running = 0.0;
        std::size_t next = 0;
        for (long long t = 1; t <= setup.horizon; ++t) {
            const int sent = policy->select(t);
            const Delivery delivery = channel.transmit(sent, rng);
            const int played = agent.step(delivery, rng, num_arms);
            const double reward = sample_reward(setup.instance, played, rng);
            policy->observe(sent, reward);
            trace.rounds.push_back(RoundRecord{t, sent, delivery.erased, played, reward});
            running += setup.instance.gap(played);
            if (next < points.size() && t == points[next]) {
                result.checkpoint_regret.push_back(running);
                ++next;
            }
        }
        result.regret = running;
    }
    result.traces.push_back(std::move(trace));
    return result;
}

int harness_thread_cap() {
    if (const char* env = std::getenv("ERASURE_BANDITS_THREADS")) {
        const long value = std::strtol(env, nullptr, 10);
        return value > 0 ? static_cast<int>(value) : 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

RegretStats monte_carlo(const ExperimentSetup& setup) {
    setup.validate();
    const int reps = setup.reps;
    const std::vector<long long> points = setup.effective_checkpoints();

    std::vector<std::vector<double>> curves(static_cast<std::size_t>(reps));
    const int threads = std::min<int>(harness_thread_cap(), reps);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](int first) {
        for (int r = first; r < reps; r += threads) {
            try {
                curves[static_cast<std::size_t>(r)] =
                    run_episode(setup, setup.base_seed + static_cast<std::uint64_t>(r))
                        .checkpoint_regret;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    RegretStats stats;
    stats.reps = reps;
    stats.base_seed = setup.base_seed;
    stats.config_hash = setup_fingerprint(setup);
    stats.points.resize(points.size());
    // Ordered reduction over replication index: the aggregate is bit-stable
    // no matter how the episodes were scheduled onto threads.
    for (std::size_t c = 0; c < points.size(); ++c) {
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) sum += curves[static_cast<std::size_t>(r)][c];
        const double mean = sum / static_cast<double>(reps);
        double sq = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double d = curves[static_cast<std::size_t>(r)][c] - mean;
            sq += d * d;
        }
        const double stddev =
            reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;
        stats.points[c] = CheckpointStat{
            points[c], mean, stddev,
            reps > 1 ? 1.96 * stddev / std::sqrt(static_cast<double>(reps)) : 0.0};
    }
    return stats;
}

std::vector<RegretStats> sweep(std::span<const ExperimentSetup> setups) {
    if (setups.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<RegretStats> table;
    table.reserve(setups.size());
    for (const ExperimentSetup& setup : setups) table.push_back(monte_carlo(setup));
    return table;
}

}  // namespace eb
