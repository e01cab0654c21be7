#include "erasure_bandits/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace eb {

namespace {

long long pow4(int batch) {
    if (batch < 0 || batch > 30) {
        throw std::invalid_argument("batch index " + std::to_string(batch) +
                                    " outside [0,30]");
    }
    return 1LL << (2 * batch);
}

void check_alphas(std::span<const long long> alphas) {
    if (alphas.empty()) throw std::invalid_argument("need at least one agent");
    for (std::size_t m = 0; m < alphas.size(); ++m) {
        if (alphas[m] < 0) throw std::invalid_argument("alpha must be >= 0");
        if (m > 0 && alphas[m] < alphas[m - 1]) {
            throw std::invalid_argument("alphas must be sorted ascending");
        }
    }
}

}  // namespace

long long agent_repetitions(long long horizon, double epsilon) {
    if (horizon < 1) throw std::invalid_argument("agent_repetitions: horizon must be >= 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("agent_repetitions: epsilon " +
                                    std::to_string(epsilon) + " must lie in [0,1)");
    }
    if (epsilon == 0.0) return 0;
    const double ratio =
        4.0 * std::log(static_cast<double>(horizon)) / std::log(1.0 / epsilon);
    const long long value = static_cast<long long>(std::ceil(ratio - 1e-9)) - 1;
    return value < 0 ? 0 : value;
}

LpEndTime lp_end_time(int batch, int num_actions, std::span<const long long> alphas) {
    if (num_actions < 1) throw std::invalid_argument("lp_end_time: need at least one action");
    check_alphas(alphas);
    const double pulls = static_cast<double>(pow4(batch));
    double inv_cost_sum = 0.0;
    for (long long a : alphas) {
        inv_cost_sum += 1.0 / (static_cast<double>(a) / pulls + 1.0);
    }
    const double tau = 1.0 / inv_cost_sum;
    return LpEndTime{pulls * static_cast<double>(num_actions) * tau, tau};
}

BatchSchedule schedule_batch(const std::vector<int>& active,
                             std::span<const long long> alphas,
                             int batch,
                             RandomSource& rng) {
    if (active.empty()) throw std::invalid_argument("schedule_batch: empty action set");
    check_alphas(alphas);

    const long long pulls = pow4(batch);
    const int num_actions = static_cast<int>(active.size());
    const int num_agents = static_cast<int>(alphas.size());
    const LpEndTime lp = lp_end_time(batch, num_actions, alphas);

    BatchSchedule schedule;
    schedule.batch = batch;
    schedule.pulls_per_action = pulls;
    schedule.t_star = lp.t_star;
    schedule.tau = lp.tau;
    schedule.agents.resize(static_cast<std::size_t>(num_agents));
    for (int m = 0; m < num_agents; ++m) {
        schedule.agents[static_cast<std::size_t>(m)].alpha = alphas[static_cast<std::size_t>(m)];
    }

    std::vector<int> order = active;
    shuffle(order, rng);

    // Phase A: whole actions while the agent's load stays within the LP
    // budget. The slack absorbs rounding in t_star itself (for M = 1 the
    // budget is exactly K*(alpha+4^i) in reals and must admit all K actions).
    const double budget = lp.t_star * (1.0 + 1e-12) + 1e-9;
    std::size_t next = 0;
    for (int m = 0; m < num_agents && next < order.size(); ++m) {
        AgentTimeline& agent = schedule.agents[static_cast<std::size_t>(m)];
        const long long cost = agent.alpha + pulls;
        while (next < order.size() &&
               static_cast<double>(agent.busy_until + cost) <= budget) {
            agent.segments.push_back(ScheduleSegment{order[next], pulls,
                                                     agent.busy_until,
                                                     SchedulePhase::kFill});
            agent.busy_until += cost;
            ++next;
        }
    }

    // Phase B: split the leftovers across the low-alpha half of the agents.
    const std::size_t remaining = order.size() - next;
    if (remaining > 0) {
        const int half = num_agents / 2;
        if (half == 0 || remaining > static_cast<std::size_t>(num_agents)) {
            throw std::logic_error("schedule_batch: fill phase left " +
                                   std::to_string(remaining) +
                                   " actions for " + std::to_string(half) +
                                   " split agents");
        }
        const long long parts_per_action =
            std::max<long long>(1, num_agents / (2 * static_cast<long long>(remaining)));
        std::vector<int> capacity(static_cast<std::size_t>(half), 3);
        long long free_slots = 3LL * half;
        for (std::size_t j = next; j < order.size(); ++j) {
            const int action = order[j];
            long long left = pulls;
            const long long base = pulls / parts_per_action;
            long long rem = pulls % parts_per_action;
            for (long long part = 0; part < parts_per_action && left > 0; ++part) {
                long long size = base + (rem > 0 ? 1 : 0);
                if (rem > 0) --rem;
                if (size == 0) continue;
                if (free_slots == 0) {
                    throw std::logic_error("schedule_batch: no split slot left");
                }
                // Uniform choice among agents that still have a free slot.
                std::uint64_t pick = rng.next_below(static_cast<std::uint64_t>(free_slots));
                int chosen = -1;
                for (int m = 0; m < half; ++m) {
                    const std::uint64_t cap =
                        static_cast<std::uint64_t>(capacity[static_cast<std::size_t>(m)]);
                    if (pick < cap) {
                        chosen = m;
                        break;
                    }
                    pick -= cap;
                }
                AgentTimeline& agent = schedule.agents[static_cast<std::size_t>(chosen)];
                agent.segments.push_back(ScheduleSegment{action, size,
                                                         agent.busy_until,
                                                         SchedulePhase::kSplit});
                agent.busy_until += agent.alpha + size;
                capacity[static_cast<std::size_t>(chosen)]--;
                free_slots--;
                left -= size;
            }
            if (left != 0) {
                throw std::logic_error("schedule_batch: split lost pulls");
            }
        }
    }

    for (const AgentTimeline& agent : schedule.agents) {
        schedule.end_time = std::max(schedule.end_time, agent.busy_until);
    }
    return schedule;
}

double schedule_end_time_bound(const BatchSchedule& schedule,
                               std::span<const long long> alphas,
                               int num_actions) {
    double alpha_sum = 0.0;
    for (long long a : alphas) alpha_sum += static_cast<double>(a);
    const double m = static_cast<double>(alphas.size());
    const double pulls_k =
        static_cast<double>(schedule.pulls_per_action) * static_cast<double>(num_actions);
    return pulls_k * schedule.tau + 6.0 * alpha_sum / m + 12.0 * pulls_k / m;
}

void write_schedule_csv(const BatchSchedule& schedule,
                        std::span<const int> agent_ids,
                        std::ostream& out) {
    if (agent_ids.size() != schedule.agents.size()) {
        throw std::invalid_argument("write_schedule_csv: agent id list mismatch");
    }
    out << "agent,slot_start,slot_len,action,effective_pulls,phase\n";
    for (std::size_t m = 0; m < schedule.agents.size(); ++m) {
        const AgentTimeline& agent = schedule.agents[m];
        for (const ScheduleSegment& seg : agent.segments) {
            out << agent_ids[m] << ',' << seg.start << ','
                << (agent.alpha + seg.effective_pulls) << ',' << seg.action << ','
                << seg.effective_pulls << ','
                << (seg.phase == SchedulePhase::kFill ? "fill" : "split") << '\n';
        }
    }
}

}  // namespace eb
