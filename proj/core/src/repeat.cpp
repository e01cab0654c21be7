#include "erasure_bandits/repeat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eb {

int repetition_parameter(long long horizon, double epsilon) {
    if (horizon < 1) throw std::invalid_argument("repetition_parameter: horizon must be >= 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("repetition_parameter: epsilon " +
                                    std::to_string(epsilon) + " must lie in [0,1)");
    }
    if (epsilon == 0.0) return 1;
    const double ratio =
        2.0 * std::log(static_cast<double>(horizon)) / std::log(1.0 / epsilon);
    // The 1e-9 nudge keeps ceil stable when the ratio is mathematically an
    // integer (e.g. T=100, eps=0.1) but lands a few ulps above it.
    const long long value = static_cast<long long>(std::ceil(ratio - 1e-9));
    return static_cast<int>(value < 1 ? 1 : value);
}

RepeatWrapper::RepeatWrapper(std::unique_ptr<Policy> inner, int alpha)
    : inner_(std::move(inner)), alpha_(alpha) {
    if (!inner_) throw std::invalid_argument("RepeatWrapper: null inner policy");
    if (alpha < 1) throw std::invalid_argument("RepeatWrapper: alpha must be >= 1");
}

int RepeatWrapper::select(long long t) {
    run_pos_ = (t - 1) % alpha_ + 1;
    if (run_pos_ == 1) {
        run_arm_ = inner_->select((t - 1) / alpha_ + 1);
        inner_selects_++;
    }
    return run_arm_;
}

void RepeatWrapper::observe(int /*arm*/, double reward) {
    if (run_pos_ == alpha_) {
        inner_->observe(run_arm_, reward);
    }
}

}  // namespace eb
