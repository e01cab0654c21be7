#pragma once

namespace eb {

// Learner-side algorithm contract. select(t) may be called once per round
// with the 1-based round index; observe feeds back the reward the learner
// saw for that round. Policies are single-threaded state machines.
class Policy {
public:
    virtual ~Policy() = default;

    virtual int select(long long t) = 0;
    virtual void observe(int arm, double reward) = 0;
};

}  // namespace eb
