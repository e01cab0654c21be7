#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "erasure_bandits/harness.hpp"
#include "erasure_bandits/rng.hpp"

using namespace eb;

namespace {

ExperimentSetup basic_setup(PolicyKind policy, double eps, long long horizon,
                            int reps = 10, std::uint64_t seed = 1) {
    ExperimentSetup setup{BanditInstance({0.9, 0.4}, DistKind::kBernoulli)};
    setup.epsilons = {eps};
    setup.policy = policy;
    setup.horizon = horizon;
    setup.reps = reps;
    setup.base_seed = seed;
    return setup;
}

bool traces_equal(const EpisodeTrace& a, const EpisodeTrace& b) {
    if (a.rounds.size() != b.rounds.size()) return false;
    for (std::size_t i = 0; i < a.rounds.size(); ++i) {
        if (a.rounds[i].t != b.rounds[i].t || a.rounds[i].sent != b.rounds[i].sent ||
            a.rounds[i].erased != b.rounds[i].erased ||
            a.rounds[i].played != b.rounds[i].played ||
            a.rounds[i].reward != b.rounds[i].reward) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("default checkpoints are powers of two plus the horizon") {
    CHECK(default_checkpoints(10) == std::vector<long long>{1, 2, 4, 8, 10});
    CHECK(default_checkpoints(16) == std::vector<long long>{1, 2, 4, 8, 16});
    CHECK(default_checkpoints(1) == std::vector<long long>{1});
    CHECK(default_checkpoints(0).empty());
}

TEST_CASE("lower bound instance family") {
    const BanditInstance inst = lower_bound_instance(3, 2);
    CHECK(inst.means() == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(inst.dist_kind() == DistKind::kDeterministic);
    CHECK(lower_bound_instance(1, 1).means() == std::vector<double>{1.0});
    for (int i = 1; i <= 6; ++i) {
        const BanditInstance family = lower_bound_instance(6, i);
        int ones = 0;
        for (double m : family.means()) ones += (m == 1.0);
        CHECK(ones == 1);
        CHECK(family.mean(i) == 1.0);
    }
    CHECK_THROWS_AS(lower_bound_instance(3, 0), std::out_of_range);
    CHECK_THROWS_AS(lower_bound_instance(3, 4), std::out_of_range);
}

TEST_CASE("empty horizon yields an empty trace") {
    ExperimentSetup setup = basic_setup(PolicyKind::kUcb, 0.5, 0);
    const EpisodeResult result = run_episode(setup, 3);
    REQUIRE(result.traces.size() == 1);
    CHECK(result.traces[0].rounds.empty());
    CHECK(result.regret == 0.0);
    CHECK(result.checkpoint_regret.empty());
}

TEST_CASE("episodes are deterministic given the seed") {
    for (PolicyKind policy : {PolicyKind::kUcb, PolicyKind::kLsae,
                              PolicyKind::kUcbRepeat, PolicyKind::kSaeRepeat}) {
        ExperimentSetup setup = basic_setup(policy, 0.4, 500);
        const EpisodeResult a = run_episode(setup, 11);
        const EpisodeResult b = run_episode(setup, 11);
        CHECK(a.regret == b.regret);
        CHECK(traces_equal(a.traces[0], b.traces[0]));
    }
}

TEST_CASE("perfect channel leaves no erased rounds") {
    ExperimentSetup setup = basic_setup(PolicyKind::kUcb, 0.0, 300);
    setup.fallback = FallbackKind::kFixedArm;
    setup.fixed_arm = 2;
    const EpisodeResult result = run_episode(setup, 5);
    for (const RoundRecord& r : result.traces[0].rounds) {
        CHECK_FALSE(r.erased);
        CHECK(r.played == r.sent);
    }
}

TEST_CASE("monte carlo on zero-gap instances reports zero regret") {
    ExperimentSetup setup{BanditInstance({0.5, 0.5, 0.5}, DistKind::kBernoulli)};
    setup.epsilons = {0.5};
    setup.policy = PolicyKind::kLsae;
    setup.horizon = 400;
    setup.reps = 8;
    const RegretStats stats = monte_carlo(setup);
    for (const CheckpointStat& p : stats.points) {
        CHECK(p.mean_regret == 0.0);
        CHECK(p.stddev == 0.0);
    }
}

TEST_CASE("deterministic lsae at eps zero has zero variance") {
    ExperimentSetup setup{BanditInstance({0.9, 0.3}, DistKind::kDeterministic)};
    setup.epsilons = {0.0};
    setup.policy = PolicyKind::kLsae;
    setup.horizon = 1000;
    setup.reps = 6;
    // every replication is the same episode; only summation round-off shows
    const EpisodeResult a = run_episode(setup, setup.base_seed);
    const EpisodeResult b = run_episode(setup, setup.base_seed + 5);
    CHECK(a.regret == b.regret);
    const RegretStats stats = monte_carlo(setup);
    for (const CheckpointStat& p : stats.points) {
        CHECK(p.stddev <= 1e-12 * std::max(1.0, p.mean_regret));
    }
}

TEST_CASE("library ucb agrees with an independently coded reference") {
    // Reference: a from-scratch UCB loop (same index rule) with its own
    // bookkeeping, run on a perfect channel.
    const std::vector<double> means = {0.9, 0.4};
    const long long horizon = 10000;
    const int reps = 60;
    double ref_sum = 0.0, ref_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        RandomSource rng(900 + static_cast<std::uint64_t>(r));
        double counts[2] = {0, 0};
        double sums[2] = {0, 0};
        double regret = 0.0;
        for (long long t = 1; t <= horizon; ++t) {
            int arm;
            if (counts[0] == 0) {
                arm = 0;
            } else if (counts[1] == 0) {
                arm = 1;
            } else {
                const double i0 =
                    sums[0] / counts[0] + std::sqrt(2 * std::log((double)t) / counts[0]);
                const double i1 =
                    sums[1] / counts[1] + std::sqrt(2 * std::log((double)t) / counts[1]);
                arm = i1 > i0 ? 1 : 0;
            }
            const double reward = rng.next_double() < means[(std::size_t)arm] ? 1.0 : 0.0;
            counts[arm] += 1;
            sums[arm] += reward;
            regret += 0.9 - means[(std::size_t)arm];
        }
        ref_sum += regret;
        ref_sq += regret * regret;
    }
    const double ref_mean = ref_sum / reps;
    const double ref_var = (ref_sq - reps * ref_mean * ref_mean) / (reps - 1);
    const double ref_ci = 1.96 * std::sqrt(ref_var / reps);

    ExperimentSetup setup = basic_setup(PolicyKind::kUcb, 0.0, horizon, reps, 17);
    const RegretStats stats = monte_carlo(setup);
    const CheckpointStat& last = stats.points.back();
    CHECK(last.t == horizon);
    CHECK(std::fabs(last.mean_regret - ref_mean) <= last.ci95 + ref_ci);
}

TEST_CASE("aggregation does not depend on execution order or thread count") {
    ExperimentSetup setup = basic_setup(PolicyKind::kUcbRepeat, 0.5, 400, 12, 77);
    // manual aggregation with replications visited in reverse order
    const std::vector<long long> points = setup.effective_checkpoints();
    std::vector<std::vector<double>> curves(static_cast<std::size_t>(setup.reps));
    for (int r = setup.reps - 1; r >= 0; --r) {
        curves[static_cast<std::size_t>(r)] =
            run_episode(setup, setup.base_seed + static_cast<std::uint64_t>(r))
                .checkpoint_regret;
    }
    const RegretStats stats = monte_carlo(setup);
    REQUIRE(stats.points.size() == points.size());
    for (std::size_t c = 0; c < points.size(); ++c) {
        double sum = 0.0;
        for (int r = 0; r < setup.reps; ++r) sum += curves[static_cast<std::size_t>(r)][c];
        CHECK(stats.points[c].mean_regret == sum / setup.reps);
    }

    setenv("ERASURE_BANDITS_THREADS", "1", 1);
    const RegretStats one = monte_carlo(setup);
    setenv("ERASURE_BANDITS_THREADS", "4", 1);
    const RegretStats four = monte_carlo(setup);
    unsetenv("ERASURE_BANDITS_THREADS");
    REQUIRE(one.points.size() == four.points.size());
    for (std::size_t c = 0; c < one.points.size(); ++c) {
        CHECK(one.points[c].mean_regret == four.points[c].mean_regret);
        CHECK(one.points[c].stddev == four.points[c].stddev);
    }
}

TEST_CASE("confidence width shrinks like one over sqrt reps") {
    ExperimentSetup setup = basic_setup(PolicyKind::kUcb, 0.3, 2000, 25, 100);
    const double ci_small = monte_carlo(setup).points.back().ci95;
    setup.reps = 100;
    const double ci_large = monte_carlo(setup).points.back().ci95;
    CHECK(ci_large < ci_small);
    // fourfold reps should roughly halve the width
    CHECK(ci_large / ci_small > 0.25);
    CHECK(ci_large / ci_small < 0.85);
}

TEST_CASE("mean cumulative regret is non-decreasing in t") {
    for (PolicyKind policy : {PolicyKind::kUcb, PolicyKind::kLsae}) {
        ExperimentSetup setup = basic_setup(policy, 0.3, 2000, 10, 5);
        const RegretStats stats = monte_carlo(setup);
        for (std::size_t c = 1; c < stats.points.size(); ++c) {
            CHECK(stats.points[c].mean_regret >= stats.points[c - 1].mean_regret);
        }
    }
}

TEST_CASE("random fallback forces a per-round regret floor") {
    // With the random-on-erasure fallback, erased rounds pay the average
    // gap, so regret per round approaches eps * mean-gap no matter how good
    // the policy is.
    const std::vector<double> means = {1.0, 0.5, 0.5, 0.5};
    const double mean_gap = (0.0 + 0.5 + 0.5 + 0.5) / 4.0;
    const double eps = 0.5;
    ExperimentSetup setup{BanditInstance(means, DistKind::kBernoulli)};
    setup.epsilons = {eps};
    setup.policy = PolicyKind::kUcb;
    setup.fallback = FallbackKind::kRandomOnErasure;
    setup.horizon = 20000;
    setup.reps = 10;
    setup.base_seed = 33;
    const RegretStats stats = monte_carlo(setup);
    const double per_round = stats.points.back().mean_regret / setup.horizon;
    CHECK(per_round >= eps * mean_gap * 0.9);
}

TEST_CASE("multi-agent episodes flow through the harness") {
    ExperimentSetup setup{BanditInstance({0.9, 0.5, 0.2}, DistKind::kBernoulli)};
    setup.epsilons = {0.2, 0.6};
    setup.policy = PolicyKind::kMultiAgent;
    setup.horizon = 1500;
    setup.reps = 4;
    const RegretStats stats = monte_carlo(setup);
    CHECK(stats.points.back().t == 1500);
    CHECK(stats.points.back().mean_regret > 0.0);
    const EpisodeResult episode = run_episode(setup, 9);
    CHECK(episode.traces.size() == 2);
    CHECK(episode.traces[0].rounds.size() == 1500);

    // checkpoint curve matches the summed trace regret at T
    CHECK(episode.checkpoint_regret.back() ==
          doctest::Approx(episode.regret).epsilon(1e-9));
}

TEST_CASE("setup validation") {
    ExperimentSetup setup = basic_setup(PolicyKind::kUcb, 0.5, 100);
    setup.epsilons = {0.2, 0.4};
    CHECK_THROWS_AS(setup.validate(), std::invalid_argument);

    ExperimentSetup ma = basic_setup(PolicyKind::kMultiAgent, 0.5, 100);
    ma.fallback = FallbackKind::kRandomOnErasure;
    CHECK_THROWS_AS(ma.validate(), std::invalid_argument);

    ExperimentSetup fixed = basic_setup(PolicyKind::kUcb, 0.5, 100);
    fixed.fallback = FallbackKind::kFixedArm;
    fixed.fixed_arm = 5;
    CHECK_THROWS_AS(fixed.validate(), std::invalid_argument);

    ExperimentSetup bad_ckpt = basic_setup(PolicyKind::kUcb, 0.5, 100);
    bad_ckpt.checkpoints = {10, 5};
    CHECK_THROWS_AS(bad_ckpt.validate(), std::invalid_argument);
}

TEST_CASE("sweep evaluates every cell in order") {
    std::vector<ExperimentSetup> grid;
    for (double eps : {0.0, 0.5}) {
        ExperimentSetup setup{BanditInstance({0.4, 0.4}, DistKind::kBernoulli)};
        setup.epsilons = {eps};
        setup.policy = PolicyKind::kUcb;
        setup.horizon = 200;
        setup.reps = 5;
        grid.push_back(setup);
    }
    const std::vector<RegretStats> table = sweep(grid);
    REQUIRE(table.size() == 2);
    for (const RegretStats& stats : table) {
        CHECK(stats.points.back().mean_regret == 0.0);  // all-equal means
    }
    // single-cell sweep equals monte_carlo on that cell
    const std::vector<RegretStats> single = sweep(std::span(grid.data(), 1));
    CHECK(single[0].points.back().mean_regret ==
          monte_carlo(grid[0]).points.back().mean_regret);
    CHECK(single[0].config_hash == monte_carlo(grid[0]).config_hash);
}

TEST_CASE("fingerprints distinguish setups") {
    const ExperimentSetup a = basic_setup(PolicyKind::kUcb, 0.5, 100);
    ExperimentSetup b = a;
    CHECK(setup_fingerprint(a) == setup_fingerprint(b));
    b.policy = PolicyKind::kLsae;
    CHECK(setup_fingerprint(a) != setup_fingerprint(b));
    ExperimentSetup c = a;
    c.epsilons = {0.25};
    CHECK(setup_fingerprint(a) != setup_fingerprint(c));
    ExperimentSetup d = a;
    d.horizon = 101;
    CHECK(setup_fingerprint(a) != setup_fingerprint(d));
}
