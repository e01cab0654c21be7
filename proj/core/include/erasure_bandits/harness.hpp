#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erasure_bandits/agent.hpp"
#include "erasure_bandits/bandit.hpp"
#include "erasure_bandits/multi_agent.hpp"
#include "erasure_bandits/trace.hpp"

namespace eb {

enum class PolicyKind { kUcb, kSae, kUcbRepeat, kSaeRepeat, kLsae, kMultiAgent };

const char* policy_kind_name(PolicyKind kind);

struct ExperimentSetup {
    explicit ExperimentSetup(BanditInstance inst) : instance(std::move(inst)) {}

    BanditInstance instance;
    std::vector<double> epsilons;  // one entry unless policy == kMultiAgent
    PolicyKind policy = PolicyKind::kUcb;
    FallbackKind fallback = FallbackKind::kLastReceived;
    int fixed_arm = 1;             // used when fallback == kFixedArm
    long long horizon = 0;
    int reps = 100;
    std::uint64_t base_seed = 0;
    std::vector<long long> checkpoints;  // empty = powers of two up to T, plus T
    double c_prime = 1.0;
    std::string output_dir = "out";

    double epsilon() const { return epsilons.at(0); }
    std::vector<long long> effective_checkpoints() const;
    void validate() const;  // throws std::invalid_argument
};

// Powers of two up to the horizon, plus the horizon itself.
std::vector<long long> default_checkpoints(long long horizon);

// Noiseless instance nu_i of the hard family: mean 1 for arm `best_arm`,
// mean 0 elsewhere.
BanditInstance lower_bound_instance(int num_arms, int best_arm);

// Stable 16-hex-digit fingerprint of everything that determines a run.
std::string setup_fingerprint(const ExperimentSetup& setup);

struct EpisodeResult {
    std::vector<EpisodeTrace> traces;  // one per agent (single entry unless multi-agent)
    double regret = 0.0;
    std::vector<double> checkpoint_regret;  // aligned with effective_checkpoints()
};

// One seeded episode: select -> transmit -> agent step -> reward -> observe,
// with the random stream consumed in that order each round. Deterministic
// given (setup, seed).
EpisodeResult run_episode(const ExperimentSetup& setup, std::uint64_t seed);

struct CheckpointStat {
    long long t = 0;
    double mean_regret = 0.0;
    double stddev = 0.0;
    double ci95 = 0.0;
};

struct RegretStats {
    std::vector<CheckpointStat> points;
    int reps = 0;
    std::uint64_t base_seed = 0;
    std::string config_hash;
};

// Runs episodes with seeds base_seed + r for r in [0, reps) and aggregates
// cumulative regret at the setup's checkpoints. Replications run in
// parallel (capped by ERASURE_BANDITS_THREADS) and are reduced in
// replication order, so the output does not depend on thread count.
RegretStats monte_carlo(const ExperimentSetup& setup);

// monte_carlo per cell, cells independent, output in input order.
std::vector<RegretStats> sweep(std::span<const ExperimentSetup> setups);

// Thread cap: ERASURE_BANDITS_THREADS if set (>= 1), else the hardware
// concurrency.
int harness_thread_cap();

}  // namespace eb
