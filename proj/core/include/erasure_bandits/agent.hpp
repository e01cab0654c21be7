#pragma once

#include "erasure_bandits/channel.hpp"
#include "erasure_bandits/rng.hpp"

namespace eb {

enum class FallbackKind { kLastReceived, kRandomOnErasure, kFixedArm };

// The agent side of the link. On a delivery it plays the delivered arm; on
// an erasure it falls back according to its configured strategy:
//   LastReceived    - replay the most recent successfully delivered arm,
//                     drawing the initial arm uniformly if nothing has ever
//                     arrived (the draw is lazy: it happens on the first
//                     erased round only).
//   RandomOnErasure - play a fresh uniform arm.
//   FixedArm        - play a predetermined arm.
class AgentState {
public:
    static AgentState last_received() { return AgentState(FallbackKind::kLastReceived, 0); }
    static AgentState random_on_erasure() { return AgentState(FallbackKind::kRandomOnErasure, 0); }
    static AgentState fixed_arm(int arm);

    // Plays one round and returns the played arm in [1, num_arms].
    int step(const Delivery& delivery, RandomSource& rng, int num_arms);

    FallbackKind fallback() const { return fallback_; }
    bool initialized() const { return initialized_; }
    int last_arm() const { return last_arm_; }
    int fixed() const { return fixed_arm_; }

private:
    AgentState(FallbackKind kind, int fixed) : fallback_(kind), fixed_arm_(fixed) {}

    FallbackKind fallback_;
    int fixed_arm_;
    int last_arm_ = 0;
    bool initialized_ = false;
};

}  // namespace eb
