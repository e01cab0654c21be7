#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "erasure_bandits/agent.hpp"
#include "erasure_bandits/bandit.hpp"
#include "erasure_bandits/channel.hpp"
#include "erasure_bandits/rng.hpp"
#include "erasure_bandits/trace.hpp"

using namespace eb;

TEST_CASE("random source basics") {
    RandomSource a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RandomSource rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        const auto v = rng.next_below(13);
        CHECK(v < 13);
        const int arm = rng.next_arm(5);
        CHECK(arm >= 1);
        CHECK(arm <= 5);
    }
    CHECK(rng.next_below(1) == 0);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(BanditInstance({}, DistKind::kBernoulli), std::invalid_argument);
    CHECK_THROWS_AS(BanditInstance({0.5, 1.2}, DistKind::kBernoulli),
                    std::invalid_argument);
    CHECK_THROWS_AS(BanditInstance({-0.1}, DistKind::kBernoulli),
                    std::invalid_argument);
    const BanditInstance inst({0.1, 0.9, 0.4}, DistKind::kBernoulli);
    CHECK(inst.num_arms() == 3);
    CHECK(inst.best_mean() == doctest::Approx(0.9));
    CHECK(inst.gap(1) == doctest::Approx(0.8));
    CHECK_THROWS_AS(inst.mean(0), std::out_of_range);
    CHECK_THROWS_AS(inst.mean(4), std::out_of_range);
}

TEST_CASE("sample_reward deterministic and degenerate") {
    RandomSource rng(1);
    const BanditInstance det({0.0, 1.0, 0.0}, DistKind::kDeterministic);
    CHECK(sample_reward(det, 2, rng) == 1.0);
    CHECK(sample_reward(det, 1, rng) == 0.0);

    const BanditInstance zero({0.0, 0.5}, DistKind::kBernoulli);
    for (int i = 0; i < 200; ++i) CHECK(sample_reward(zero, 1, rng) == 0.0);
    CHECK_THROWS_AS(sample_reward(zero, 3, rng), std::out_of_range);
}

TEST_CASE("sample_reward bernoulli concentration") {
    RandomSource rng(2024);
    const BanditInstance inst({0.3}, DistKind::kBernoulli);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_reward(inst, 1, rng);
    CHECK(std::fabs(sum / n - 0.3) < 0.01);
}

TEST_CASE("transmit") {
    CHECK_THROWS_AS(ErasureChannel(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ErasureChannel(-0.2), std::invalid_argument);

    RandomSource rng(5);
    const ErasureChannel perfect(0.0);
    for (int i = 0; i < 1000; ++i) {
        const Delivery d = perfect.transmit(3, rng);
        CHECK_FALSE(d.erased);
        CHECK(d.arm == 3);
    }

    const ErasureChannel half(0.5);
    const int n = 100000;
    int erased = 0;
    for (int i = 0; i < n; ++i) {
        const Delivery d = half.transmit(i % 7 + 1, rng);
        if (d.erased) {
            ++erased;
        } else {
            CHECK(d.arm == i % 7 + 1);  // payload never corrupted
        }
    }
    const double band = 3.0 * std::sqrt(0.5 * 0.5 / n);
    CHECK(std::fabs(static_cast<double>(erased) / n - 0.5) < band);
}

TEST_CASE("agent_step reproduces the worked play sequence") {
    // sent [1,3,2,4,2] with erasures at rounds 3 and 4 -> played [1,3,3,3,2]
    RandomSource rng(1);
    AgentState agent = AgentState::last_received();
    const std::vector<int> sent = {1, 3, 2, 4, 2};
    const std::set<int> erased = {3, 4};
    std::vector<int> played;
    for (int t = 1; t <= 5; ++t) {
        const Delivery d = erased.count(t) ? Delivery::make_erased()
                                           : Delivery::delivered(sent[t - 1]);
        played.push_back(agent.step(d, rng, 4));
    }
    CHECK(played == std::vector<int>{1, 3, 3, 3, 2});
}

TEST_CASE("agent_step fallbacks") {
    RandomSource rng(99);

    AgentState fixed = AgentState::fixed_arm(7);
    CHECK(fixed.step(Delivery::make_erased(), rng, 9) == 7);
    CHECK(fixed.step(Delivery::delivered(2), rng, 9) == 2);
    CHECK_THROWS_AS(AgentState::fixed_arm(0), std::invalid_argument);

    AgentState random = AgentState::random_on_erasure();
    for (int i = 0; i < 100; ++i) {
        const int arm = random.step(Delivery::make_erased(), rng, 6);
        CHECK(arm >= 1);
        CHECK(arm <= 6);
    }

    // perfect channel: played sequence equals sent sequence exactly
    AgentState last = AgentState::last_received();
    for (int t = 1; t <= 50; ++t) {
        const int sent = t % 5 + 1;
        CHECK(last.step(Delivery::delivered(sent), rng, 5) == sent);
    }

    // initial arm is drawn lazily and uniformly
    AgentState fresh = AgentState::last_received();
    const int a0 = fresh.step(Delivery::make_erased(), rng, 3);
    CHECK(a0 >= 1);
    CHECK(a0 <= 3);
    CHECK(fresh.step(Delivery::make_erased(), rng, 3) == a0);
}

TEST_CASE("replay exactness, exhaustive over erasure patterns") {
    const int horizon = 12;
    const int num_arms = 5;
    std::vector<int> sent(horizon);
    for (int t = 0; t < horizon; ++t) sent[t] = (t * 3) % num_arms + 1;

    for (unsigned pattern = 0; pattern < (1u << horizon); ++pattern) {
        RandomSource rng(pattern);
        AgentState agent = AgentState::last_received();
        int initial_arm = 0;
        int last_delivered = 0;
        for (int t = 0; t < horizon; ++t) {
            const bool erased = (pattern >> t) & 1u;
            const Delivery d = erased ? Delivery::make_erased()
                                      : Delivery::delivered(sent[t]);
            const int played = agent.step(d, rng, num_arms);
            if (!erased) last_delivered = sent[t];
            if (last_delivered != 0) {
                CHECK(played == last_delivered);
            } else {
                if (initial_arm == 0) {
                    initial_arm = played;
                    CHECK(played >= 1);
                    CHECK(played <= num_arms);
                }
                CHECK(played == initial_arm);
            }
        }
    }
}

TEST_CASE("compute_regret") {
    const BanditInstance inst({0.1, 0.2, 0.9, 0.4}, DistKind::kBernoulli);
    EpisodeTrace trace;
    trace.horizon = 5;
    const std::vector<int> played = {1, 3, 3, 3, 2};
    for (int t = 1; t <= 5; ++t) {
        trace.rounds.push_back(RoundRecord{t, 0, false, played[t - 1], 0.0});
    }
    CHECK(compute_regret(trace, inst) == doctest::Approx(1.5).epsilon(1e-12));

    // always the best arm -> zero
    EpisodeTrace best;
    for (int t = 1; t <= 10; ++t) best.rounds.push_back(RoundRecord{t, 3, false, 3, 0.0});
    CHECK(compute_regret(best, inst) == 0.0);

    // all-equal means -> zero regardless of plays
    const BanditInstance flat({0.4, 0.4, 0.4}, DistKind::kBernoulli);
    EpisodeTrace any;
    for (int t = 1; t <= 10; ++t) any.rounds.push_back(RoundRecord{t, 1, false, t % 3 + 1, 0.0});
    CHECK(compute_regret(any, flat) == 0.0);

    // played arm out of range for the instance
    EpisodeTrace bad;
    bad.rounds.push_back(RoundRecord{1, 1, false, 7, 0.0});
    CHECK_THROWS_AS(compute_regret(bad, inst), std::invalid_argument);
}

TEST_CASE("compute_regret is nonnegative and additive over concatenation") {
    RandomSource rng(314);
    const BanditInstance inst({0.15, 0.8, 0.55, 0.3}, DistKind::kBernoulli);
    for (int trial = 0; trial < 50; ++trial) {
        EpisodeTrace a, b, joined;
        const int na = static_cast<int>(rng.next_below(20));
        const int nb = static_cast<int>(rng.next_below(20));
        for (int t = 1; t <= na; ++t) {
            const RoundRecord r{t, 0, false, rng.next_arm(4), 0.0};
            a.rounds.push_back(r);
            joined.rounds.push_back(r);
        }
        for (int t = 1; t <= nb; ++t) {
            const RoundRecord r{na + t, 0, false, rng.next_arm(4), 0.0};
            b.rounds.push_back(r);
            joined.rounds.push_back(r);
        }
        const double ra = compute_regret(a, inst);
        const double rb = compute_regret(b, inst);
        CHECK(ra >= 0.0);
        CHECK(rb >= 0.0);
        CHECK(compute_regret(joined, inst) == doctest::Approx(ra + rb).epsilon(1e-12));
    }
}

TEST_CASE("shifted_mean") {
    const BanditInstance inst({1.0, 0.0}, DistKind::kBernoulli);
    CHECK(shifted_mean(inst, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(shifted_mean(inst, 1, 0.0) == doctest::Approx(1.0));
    CHECK(shifted_mean(inst, 2, 0.0) == doctest::Approx(0.0));

    const BanditInstance flat({0.3, 0.3, 0.3}, DistKind::kBernoulli);
    for (double eps : {0.0, 0.2, 0.9}) {
        CHECK(shifted_mean(flat, 2, eps) == doctest::Approx(0.3).epsilon(1e-12));
    }
}

TEST_CASE("random-on-erasure reward mean matches shifted_mean") {
    const BanditInstance inst({0.2, 0.4, 0.6, 0.8}, DistKind::kBernoulli);
    const double eps = 0.5;
    const ErasureChannel channel(eps);
    RandomSource rng(4242);
    const int n = 100000;
    const int sent_arm = 2;
    AgentState agent = AgentState::random_on_erasure();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Delivery d = channel.transmit(sent_arm, rng);
        const int played = agent.step(d, rng, inst.num_arms());
        sum += sample_reward(inst, played, rng);
    }
    const double expect = shifted_mean(inst, sent_arm, eps);
    const double band = 3.0 * std::sqrt(expect * (1.0 - expect) / n);
    CHECK(std::fabs(sum / n - expect) < band);
}
