#pragma once

#include "erasure_bandits/rng.hpp"

namespace eb {

// Outcome of one transmission: either the instruction arrived unchanged or
// it was dropped. The channel never corrupts, it only erases.
struct Delivery {
    bool erased = false;
    int arm = 0;  // valid only when !erased

    static Delivery delivered(int a) { return Delivery{false, a}; }
    static Delivery make_erased() { return Delivery{true, 0}; }
};

// Memoryless erasure channel: each transmit drops the instruction with
// probability epsilon, independently across calls.
class ErasureChannel {
public:
    explicit ErasureChannel(double epsilon);  // requires 0 <= epsilon < 1

    double epsilon() const { return epsilon_; }

    // Always consumes exactly one uniform draw, so traces stay aligned
    // across epsilon values under a fixed seed.
    Delivery transmit(int instruction, RandomSource& rng) const {
        return rng.bernoulli(epsilon_) ? Delivery::make_erased()
                                       : Delivery::delivered(instruction);
    }

private:
    double epsilon_;
};

}  // namespace eb
