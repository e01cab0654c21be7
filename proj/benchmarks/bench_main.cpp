#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "erasure_bandits/harness.hpp"
#include "erasure_bandits/multi_agent.hpp"
#include "erasure_bandits/rng.hpp"
#include "erasure_bandits/schedule.hpp"

namespace {

eb::ExperimentSetup episode_setup(eb::PolicyKind policy) {
    std::vector<double> means(10, 0.6);
    means[0] = 0.9;
    eb::ExperimentSetup setup{eb::BanditInstance(means, eb::DistKind::kBernoulli)};
    setup.epsilons = {0.5};
    setup.policy = policy;
    setup.horizon = 10000;
    setup.reps = 1;
    return setup;
}

void BM_EpisodeUcb(benchmark::State& state) {
    const eb::ExperimentSetup setup = episode_setup(eb::PolicyKind::kUcb);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eb::run_episode(setup, seed++).regret);
    }
    state.SetItemsProcessed(state.iterations() * setup.horizon);
}
BENCHMARK(BM_EpisodeUcb)->Unit(benchmark::kMillisecond);

void BM_EpisodeLsae(benchmark::State& state) {
    const eb::ExperimentSetup setup = episode_setup(eb::PolicyKind::kLsae);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eb::run_episode(setup, seed++).regret);
    }
    state.SetItemsProcessed(state.iterations() * setup.horizon);
}
BENCHMARK(BM_EpisodeLsae)->Unit(benchmark::kMillisecond);

void BM_ScheduleBatch(benchmark::State& state) {
    const int num_actions = static_cast<int>(state.range(0));
    std::vector<int> active(static_cast<std::size_t>(num_actions));
    std::iota(active.begin(), active.end(), 1);
    std::vector<long long> alphas = {0, 5, 17, 40, 90, 150, 220, 349};
    eb::RandomSource rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eb::schedule_batch(active, alphas, 3, rng).end_time);
    }
}
BENCHMARK(BM_ScheduleBatch)->Arg(4)->Arg(16);

void BM_MaRun(benchmark::State& state) {
    const eb::MultiAgentConfig config =
        eb::MultiAgentConfig::make({0.2, 0.5, 0.8}, 8, 5000);
    std::vector<double> means(8, 0.5);
    means[3] = 0.9;
    const eb::BanditInstance inst(means, eb::DistKind::kBernoulli);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eb::ma_run(config, inst, seed++).total_regret);
    }
    state.SetItemsProcessed(state.iterations() * config.horizon * 3);
}
BENCHMARK(BM_MaRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
