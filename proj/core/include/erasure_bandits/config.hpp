#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "erasure_bandits/harness.hpp"

namespace eb {

// Raised for malformed or invalid configuration input; the CLI maps it to
// exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the sectioned key-value experiment format:
//
//   [instance]
//   means = 0.9, 0.7, 0.5        # or: generator = lower_bound, arms, best_arm
//   dist = bernoulli             # or deterministic (default bernoulli)
//   [channel]
//   epsilon = 0.5                # or epsilons = 0.1, 0.5 (multiagent)
//   fallback = last_received     # random_on_erasure | fixed_arm (+ fixed_arm = j)
//   [policy]
//   kind = lsae                  # ucb | sae | repeat | ucb_repeat | sae_repeat | multiagent
//   inner = ucb                  # required when kind = repeat
//   c_prime = 1.0
//   [run]
//   T = 10000
//   seed = 1
//   reps = 100                   # default 100
//   checkpoints = 1, 10, 100     # default: powers of two up to T, plus T
//   [output]
//   dir = out
//
// Unknown sections or keys are rejected; probabilities are validated at
// parse time.
ExperimentSetup parse_config(const std::string& text);

// Canonical document for a setup; parse_config(render_config(s)) == s.
std::string render_config(const ExperimentSetup& setup);

struct SweepCell {
    ExperimentSetup setup;
    // Overridden (key, value) pairs identifying the cell, in grid order.
    std::vector<std::pair<std::string, std::string>> overrides;
};

// A sweep file is a run config plus a [sweep] section whose keys (epsilon,
// T, policy) hold comma lists. Cells are the cross product, ordered with
// the first declared key outermost.
std::vector<SweepCell> parse_sweep_config(const std::string& text);

}  // namespace eb
