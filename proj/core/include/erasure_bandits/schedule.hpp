#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "erasure_bandits/rng.hpp"

namespace eb {

// Repetitions for an agent behind an epsilon_m channel over horizon T:
// max(0, ceil(4 log T / log(1/epsilon_m)) - 1). epsilon_m = 0 clamps to 0.
long long agent_repetitions(long long horizon, double epsilon);

struct LpEndTime {
    double t_star;  // 4^i K / sum_m 1/(alpha_m/4^i + 1)
    double tau;     // t_star / (4^i K)
};

// Closed-form optimum of the relaxed batch-scheduling LP: every agent's
// weighted load equalizes at t_star, where one effective pull costs agent m
// a factor alpha_m/4^i + 1 of a slot.
LpEndTime lp_end_time(int batch, int num_actions, std::span<const long long> alphas);

enum class SchedulePhase { kFill, kSplit };

// A block of alpha_m + effective_pulls consecutive slots on one agent: the
// instruction is repeated for the whole block, the first alpha_m slots are
// protection and only the last effective_pulls slots count.
struct ScheduleSegment {
    int action = 0;
    long long effective_pulls = 0;
    long long start = 0;  // 0-based slot of the first protection slot
    SchedulePhase phase = SchedulePhase::kFill;
};

struct AgentTimeline {
    long long alpha = 0;
    std::vector<ScheduleSegment> segments;
    long long busy_until = 0;  // slots occupied by segments
};

struct BatchSchedule {
    int batch = 0;                 // i
    long long pulls_per_action = 0;  // 4^i
    double t_star = 0.0;
    double tau = 0.0;
    std::vector<AgentTimeline> agents;  // in caller (ascending-alpha) order
    long long end_time = 0;            // max busy_until over agents
};

// Two-phase batch scheduler. Phase A walks the agents (ascending alpha) and
// packs whole actions -- one segment of alpha_m + 4^i slots each, action
// order uniformly shuffled -- while the agent's load stays within the LP
// budget 4^i K tau. Phase B splits each leftover action into
// max(1, floor(M/(2*Khat))) near-equal parts and places every part on a
// uniformly random agent among the first floor(M/2), at most three parts
// per agent. Requires `alphas` ascending; `active` non-empty; batch >= 0.
BatchSchedule schedule_batch(const std::vector<int>& active,
                             std::span<const long long> alphas,
                             int batch,
                             RandomSource& rng);

// End-time guarantee the scheduler is tested against:
// 4^i K tau + 6*(sum alphas)/M + 12*4^i K/M.
double schedule_end_time_bound(const BatchSchedule& schedule,
                               std::span<const long long> alphas,
                               int num_actions);

// CSV rows `agent,slot_start,slot_len,action,effective_pulls,phase`, agents
// in timeline order relabelled by `agent_ids` (1-based originals).
void write_schedule_csv(const BatchSchedule& schedule,
                        std::span<const int> agent_ids,
                        std::ostream& out);

}  // namespace eb
