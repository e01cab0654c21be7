// Command-line surface: run | sweep | schedule | lower-bound | delta-star.
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erasure_bandits/config.hpp"
#include "erasure_bandits/delta_star.hpp"
#include "erasure_bandits/harness.hpp"
#include "erasure_bandits/multi_agent.hpp"
#include "erasure_bandits/results_csv.hpp"
#include "erasure_bandits/rng.hpp"
#include "erasure_bandits/schedule.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw eb::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

std::vector<double> parse_probability_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            throw eb::ConfigError("'" + token + "' is not a number");
        }
        if (used != token.size() || !(value >= 0.0 && value < 1.0)) {
            throw eb::ConfigError("epsilon '" + token + "' must lie in [0,1)");
        }
        values.push_back(value);
    }
    if (values.empty()) throw eb::ConfigError("empty epsilon list");
    return values;
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    int reps = 0;          // 0 = keep file value
    long long seed = -1;   // <0 = keep file value
};

void apply_overrides(eb::ExperimentSetup& setup, const CommonFlags& flags) {
    if (!flags.out_dir.empty()) setup.output_dir = flags.out_dir;
    if (flags.reps > 0) setup.reps = flags.reps;
    if (flags.seed >= 0) setup.base_seed = static_cast<std::uint64_t>(flags.seed);
}

int cmd_run(const CommonFlags& flags) {
    eb::ExperimentSetup setup = eb::parse_config(read_file(flags.config_path));
    apply_overrides(setup, flags);
    fs::create_directories(setup.output_dir);
    const eb::RegretStats stats = eb::monte_carlo(setup);
    const std::string path = setup.output_dir + "/results.csv";
    eb::write_results_csv(stats, path);
    std::cout << "wrote " << path << "\n"
              << "config_hash=" << stats.config_hash
              << " reps=" << stats.reps << " seed=" << stats.base_seed
              << " rng=" << eb::RandomSource::kGeneratorName << "\n";
    return 0;
}

int cmd_sweep(const CommonFlags& flags) {
    std::vector<eb::SweepCell> cells = eb::parse_sweep_config(read_file(flags.config_path));
    std::string out_dir = cells.front().setup.output_dir;
    if (!flags.out_dir.empty()) out_dir = flags.out_dir;
    fs::create_directories(out_dir);

    std::ofstream index(out_dir + "/index.csv", std::ios::binary);
    if (!index) throw std::runtime_error("cannot open '" + out_dir + "/index.csv'");
    index << "cell";
    for (const auto& [key, value] : cells.front().overrides) index << ',' << key;
    index << ",file,config_hash\n";

    for (std::size_t c = 0; c < cells.size(); ++c) {
        eb::ExperimentSetup setup = cells[c].setup;
        apply_overrides(setup, flags);
        const eb::RegretStats stats = eb::monte_carlo(setup);
        char name[32];
        std::snprintf(name, sizeof(name), "cell_%03zu.csv", c);
        eb::write_results_csv(stats, out_dir + "/" + name);
        index << c;
        for (const auto& [key, value] : cells[c].overrides) index << ',' << value;
        index << ',' << name << ',' << stats.config_hash << '\n';
        std::cout << "cell " << c << " -> " << name << "\n";
    }
    std::cout << "wrote " << out_dir << "/index.csv (" << cells.size()
              << " cells, rng=" << eb::RandomSource::kGeneratorName << ")\n";
    return 0;
}

int cmd_schedule(int num_arms, int batch, const std::string& eps_csv,
                 long long horizon, long long seed, const std::string& out_dir) {
    const std::vector<double> epsilons = parse_probability_list(eps_csv);
    const eb::MultiAgentConfig config =
        eb::MultiAgentConfig::make(epsilons, num_arms, horizon);

    // schedule_batch wants ascending alphas; keep the original agent ids for
    // the CSV.
    std::vector<int> order(epsilons.size());
    for (std::size_t m = 0; m < order.size(); ++m) order[m] = static_cast<int>(m);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return config.alphas[static_cast<std::size_t>(a)] <
               config.alphas[static_cast<std::size_t>(b)];
    });
    std::vector<long long> sorted_alphas;
    std::vector<int> agent_ids;
    for (int orig : order) {
        sorted_alphas.push_back(config.alphas[static_cast<std::size_t>(orig)]);
        agent_ids.push_back(orig + 1);
    }

    std::vector<int> active(static_cast<std::size_t>(num_arms));
    for (int a = 0; a < num_arms; ++a) active[static_cast<std::size_t>(a)] = a + 1;

    eb::RandomSource rng(static_cast<std::uint64_t>(seed));
    const eb::BatchSchedule schedule =
        eb::schedule_batch(active, sorted_alphas, batch, rng);

    fs::create_directories(out_dir);
    const std::string path = out_dir + "/schedule.csv";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    eb::write_schedule_csv(schedule, agent_ids, file);
    std::cout << "wrote " << path << "\n"
              << "end_time=" << schedule.end_time << " t_star=" << schedule.t_star
              << " tau=" << schedule.tau << " pulls_per_action="
              << schedule.pulls_per_action << "\n";
    return 0;
}

int cmd_lower_bound(int num_arms, const std::string& eps_csv,
                    const std::string& policies_csv, long long horizon, int reps,
                    long long seed, const std::string& out_dir) {
    const std::vector<double> epsilons = parse_probability_list(eps_csv);
    std::vector<eb::PolicyKind> policies;
    {
        std::stringstream stream(policies_csv);
        std::string token;
        while (std::getline(stream, token, ',')) {
            if (token == "lsae") {
                policies.push_back(eb::PolicyKind::kLsae);
            } else if (token == "ucb_repeat") {
                policies.push_back(eb::PolicyKind::kUcbRepeat);
            } else if (token == "sae_repeat") {
                policies.push_back(eb::PolicyKind::kSaeRepeat);
            } else if (!token.empty()) {
                throw eb::ConfigError("unknown policy '" + token +
                                      "' (want lsae, ucb_repeat or sae_repeat)");
            }
        }
    }
    if (policies.empty()) throw eb::ConfigError("empty policy list");

    fs::create_directories(out_dir);
    const std::string path = out_dir + "/lower_bound.csv";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    file << "policy,epsilon,mean_regret,std,ci95,reps,seed\n";
    for (const eb::PolicyKind policy : policies) {
        for (const double eps : epsilons) {
            // The hard family: arm best_arm pays 1, everything else pays 0.
            // Rotate the hidden best arm across replications.
            std::vector<double> finals;
            finals.reserve(static_cast<std::size_t>(reps));
            for (int r = 0; r < reps; ++r) {
                eb::ExperimentSetup setup{
                    eb::lower_bound_instance(num_arms, 1 + r % num_arms)};
                setup.epsilons = {eps};
                setup.policy = policy;
                setup.horizon = horizon;
                setup.reps = 1;
                setup.base_seed = static_cast<std::uint64_t>(seed);
                finals.push_back(
                    eb::run_episode(setup, static_cast<std::uint64_t>(seed + r)).regret);
            }
            double sum = 0.0;
            for (double v : finals) sum += v;
            const double mean = sum / static_cast<double>(reps);
            double sq = 0.0;
            for (double v : finals) sq += (v - mean) * (v - mean);
            const double stddev =
                reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;
            const double ci =
                reps > 1 ? 1.96 * stddev / std::sqrt(static_cast<double>(reps)) : 0.0;
            file << eb::policy_kind_name(policy) << ',' << eb::format_fixed9(eps)
                 << ',' << eb::format_fixed9(mean) << ',' << eb::format_fixed9(stddev)
                 << ',' << eb::format_fixed9(ci) << ',' << reps << ',' << seed << '\n';
            std::cout << eb::policy_kind_name(policy) << " eps=" << eps
                      << " mean_regret=" << mean << "\n";
        }
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_delta_star(const CommonFlags& flags) {
    eb::ExperimentSetup setup = eb::parse_config(read_file(flags.config_path));
    const eb::MultiAgentConfig config = eb::MultiAgentConfig::make(
        setup.epsilons, setup.instance.num_arms(), setup.horizon);
    const double delta = eb::solve_delta_star(
        config.num_arms, config.num_agents(), config.horizon, config.alphas,
        setup.c_prime);
    std::printf("%.12g\n", delta);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-armed bandit simulation over action-erasure channels"};
    app.require_subcommand(1);

    CommonFlags flags;

    CLI::App* run = app.add_subcommand("run", "Run one config and write results.csv");
    run->add_option("--config", flags.config_path, "config file")->required();
    run->add_option("--out", flags.out_dir, "output directory (overrides [output] dir)");
    run->add_option("--reps", flags.reps, "replication count (overrides file)");
    run->add_option("--seed", flags.seed, "base seed (overrides file)");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Run a sweep grid: CSV per cell plus index.csv");
    sweep_cmd->add_option("--config", flags.config_path, "sweep file")->required();
    sweep_cmd->add_option("--out", flags.out_dir, "output directory");
    sweep_cmd->add_option("--reps", flags.reps, "replication count (overrides file)");
    sweep_cmd->add_option("--seed", flags.seed, "base seed (overrides file)");

    int sched_arms = 4;
    int sched_batch = 1;
    std::string sched_eps = "0.5";
    long long sched_horizon = 10000;
    long long sched_seed = 1;
    std::string sched_out = "out";
    CLI::App* schedule_cmd =
        app.add_subcommand("schedule", "Emit one batch schedule as CSV");
    schedule_cmd->add_option("--arms", sched_arms, "number of actions K");
    schedule_cmd->add_option("--batch", sched_batch, "batch index i (4^i pulls/action)");
    schedule_cmd->add_option("--epsilons", sched_eps, "per-agent erasure probabilities");
    schedule_cmd->add_option("--horizon", sched_horizon, "horizon T (sets repetitions)");
    schedule_cmd->add_option("--seed", sched_seed, "shuffle seed");
    schedule_cmd->add_option("--out", sched_out, "output directory");

    int lb_arms = 16;
    std::string lb_eps = "0.5,0.9,0.99";
    std::string lb_policies = "lsae,ucb_repeat";
    long long lb_horizon = 300000;
    int lb_reps = 50;
    long long lb_seed = 1;
    std::string lb_out = "out";
    CLI::App* lb_cmd = app.add_subcommand(
        "lower-bound", "Regret of the one-good-arm noiseless family vs epsilon");
    lb_cmd->add_option("--arms", lb_arms, "number of arms K");
    lb_cmd->add_option("--epsilons", lb_eps, "erasure probabilities to sweep");
    lb_cmd->add_option("--policies", lb_policies, "policies to run");
    lb_cmd->add_option("--horizon", lb_horizon, "horizon T");
    lb_cmd->add_option("--reps", lb_reps, "episodes per (policy, epsilon)");
    lb_cmd->add_option("--seed", lb_seed, "base seed");
    lb_cmd->add_option("--out", lb_out, "output directory");

    CLI::App* ds_cmd = app.add_subcommand(
        "delta-star", "Print the balancing gap for a multi-agent config");
    ds_cmd->add_option("--config", flags.config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(flags);
        if (sweep_cmd->parsed()) return cmd_sweep(flags);
        if (schedule_cmd->parsed()) {
            return cmd_schedule(sched_arms, sched_batch, sched_eps, sched_horizon,
                                sched_seed, sched_out);
        }
        if (lb_cmd->parsed()) {
            return cmd_lower_bound(lb_arms, lb_eps, lb_policies, lb_horizon, lb_reps,
                                   lb_seed, lb_out);
        }
        if (ds_cmd->parsed()) return cmd_delta_star(flags);
    } catch (const eb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
