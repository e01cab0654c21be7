#pragma once

#include <memory>

#include "erasure_bandits/policy.hpp"

namespace eb {

// Repetitions per run for a horizon-T episode over an epsilon channel:
// max(1, ceil(2 log T / log(1/epsilon))). The log ratio is base-invariant.
// epsilon = 0 clamps to 1 (the wrapper degenerates to the identity).
int repetition_parameter(long long horizon, double epsilon);

// Wraps any policy so each of its decisions is sent alpha consecutive
// rounds, and only the reward of each run's last round is fed back to it.
// A run of alpha sends survives the channel as long as at least one send
// is delivered, so the run-end reward comes from the intended arm. The
// inner policy experiences a horizon of ceil(T/alpha).
class RepeatWrapper : public Policy {
public:
    RepeatWrapper(std::unique_ptr<Policy> inner, int alpha);

    // t == 1 (mod alpha) queries the inner policy at inner time
    // (t-1)/alpha + 1; every other round repeats the cached run arm.
    int select(long long t) override;

    // Forwards (run arm, reward) to the inner policy only when the round of
    // the preceding select closed a run (t == 0 mod alpha). Rewards of a
    // trailing partial run are discarded.
    void observe(int arm, double reward) override;

    int alpha() const { return alpha_; }
    long long inner_select_count() const { return inner_selects_; }
    Policy& inner() { return *inner_; }

private:
    std::unique_ptr<Policy> inner_;
    int alpha_;
    int run_arm_ = 0;
    long long run_pos_ = 0;  // position in the current run, set by select
    long long inner_selects_ = 0;
};

}  // namespace eb
