#include "erasure_bandits/agent.hpp"

#include <stdexcept>
#include <string>

namespace eb {

AgentState AgentState::fixed_arm(int arm) {
    if (arm < 1) {
        throw std::invalid_argument("AgentState: fixed arm must be >= 1, got " +
                                    std::to_string(arm));
    }
    return AgentState(FallbackKind::kFixedArm, arm);
}

int AgentState::step(const Delivery& delivery, RandomSource& rng, int num_arms) {
    if (!delivery.erased) {
        last_arm_ = delivery.arm;
        initialized_ = true;
        return delivery.arm;
    }
    switch (fallback_) {
        case FallbackKind::kLastReceived:
            if (!initialized_) {
                last_arm_ = rng.next_arm(num_arms);
                initialized_ = true;
            }
            return last_arm_;
        case FallbackKind::kRandomOnErasure:
            return rng.next_arm(num_arms);
        case FallbackKind::kFixedArm:
            return fixed_arm_;
    }
    return last_arm_;  // unreachable
}

}  // namespace eb
