#include "erasure_bandits/config.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace eb {

namespace {

std::string trim(const std::string& s) {
    const std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    std::stringstream stream(value);
    while (std::getline(stream, current, ',')) {
        current = trim(current);
        if (!current.empty()) items.push_back(current);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + token + "' is not a number");
    }
    if (used != token.size()) {
        throw ConfigError("key '" + key + "': trailing junk in '" + token + "'");
    }
    return value;
}

long long parse_int(const std::string& key, const std::string& token) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + token + "' is not an integer");
    }
    if (used != token.size()) {
        throw ConfigError("key '" + key + "': trailing junk in '" + token + "'");
    }
    return value;
}

// section -> key -> value, with unknown names rejected against a schema.
class Document {
public:
    explicit Document(const std::string& text, bool allow_sweep) {
        static const std::map<std::string, std::set<std::string>> kSchema = {
            {"instance", {"means", "dist", "generator", "arms", "best_arm"}},
            {"channel", {"epsilon", "epsilons", "fallback", "fixed_arm"}},
            {"policy", {"kind", "inner", "c_prime"}},
            {"run", {"T", "reps", "seed", "checkpoints"}},
            {"output", {"dir"}},
            {"sweep", {"epsilon", "T", "policy"}},
        };
        std::string section;
        std::istringstream stream(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(stream, raw)) {
            ++line_no;
            std::string line = trim(raw);
            const std::size_t comment = line.find('#');
            if (comment != std::string::npos) line = trim(line.substr(0, comment));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError("line " + std::to_string(line_no) +
                                      ": malformed section header '" + line + "'");
                }
                section = trim(line.substr(1, line.size() - 2));
                if (kSchema.find(section) == kSchema.end() ||
                    (section == "sweep" && !allow_sweep)) {
                    throw ConfigError("unknown section [" + section + "]");
                }
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line + "'");
            }
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": key outside any section");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto& allowed = kSchema.at(section);
            if (allowed.find(key) == allowed.end()) {
                throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
            }
            if (!values_[section].emplace(key, value).second) {
                throw ConfigError("duplicate key '" + key + "' in section [" + section + "]");
            }
            if (section == "sweep") sweep_order_.push_back(key);
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = values_.find(section);
        return s != values_.end() && s->second.find(key) != s->second.end();
    }

    std::string get(const std::string& section, const std::string& key) const {
        if (!has(section, key)) {
            throw ConfigError("missing required key '" + key + "' in section [" +
                              section + "]");
        }
        return values_.at(section).at(key);
    }

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const {
        return has(section, key) ? values_.at(section).at(key) : fallback;
    }

    const std::vector<std::string>& sweep_order() const { return sweep_order_; }

private:
    std::map<std::string, std::map<std::string, std::string>> values_;
    std::vector<std::string> sweep_order_;
};

PolicyKind parse_policy_kind(const Document& doc) {
    const std::string kind = doc.get("policy", "kind");
    if (kind == "ucb") return PolicyKind::kUcb;
    if (kind == "sae") return PolicyKind::kSae;
    if (kind == "ucb_repeat") return PolicyKind::kUcbRepeat;
    if (kind == "sae_repeat") return PolicyKind::kSaeRepeat;
    if (kind == "lsae") return PolicyKind::kLsae;
    if (kind == "multiagent") return PolicyKind::kMultiAgent;
    if (kind == "repeat") {
        if (!doc.has("policy", "inner")) {
            throw ConfigError("policy kind 'repeat' needs an 'inner' policy (ucb or sae)");
        }
        const std::string inner = doc.get("policy", "inner");
        if (inner == "ucb") return PolicyKind::kUcbRepeat;
        if (inner == "sae") return PolicyKind::kSaeRepeat;
        throw ConfigError("unknown inner policy '" + inner + "' (want ucb or sae)");
    }
    throw ConfigError("unknown policy kind '" + kind + "'");
}

PolicyKind parse_policy_token(const std::string& token) {
    if (token == "ucb") return PolicyKind::kUcb;
    if (token == "sae") return PolicyKind::kSae;
    if (token == "ucb_repeat") return PolicyKind::kUcbRepeat;
    if (token == "sae_repeat") return PolicyKind::kSaeRepeat;
    if (token == "lsae") return PolicyKind::kLsae;
    if (token == "multiagent") return PolicyKind::kMultiAgent;
    throw ConfigError("unknown policy '" + token + "'");
}

ExperimentSetup setup_from_document(const Document& doc) {
    // Instance.
    BanditInstance instance({0.5}, DistKind::kBernoulli);
    if (doc.has("instance", "generator")) {
        const std::string gen = doc.get("instance", "generator");
        if (gen != "lower_bound") {
            throw ConfigError("unknown instance generator '" + gen + "'");
        }
        if (doc.has("instance", "means")) {
            throw ConfigError("give either 'means' or 'generator', not both");
        }
        const long long arms = parse_int("arms", doc.get("instance", "arms"));
        const long long best = parse_int("best_arm", doc.get("instance", "best_arm"));
        if (arms < 1 || best < 1 || best > arms) {
            throw ConfigError("lower_bound generator needs 1 <= best_arm <= arms");
        }
        instance = lower_bound_instance(static_cast<int>(arms), static_cast<int>(best));
        const std::string dist = doc.get_or("instance", "dist", "deterministic");
        if (dist != "deterministic") {
            throw ConfigError("the lower_bound generator is deterministic by definition");
        }
    } else {
        std::vector<double> means;
        for (const std::string& token : split_list(doc.get("instance", "means"))) {
            const double m = parse_double("means", token);
            if (!(m >= 0.0 && m <= 1.0)) {
                throw ConfigError("arm mean " + token + " outside [0,1]");
            }
            means.push_back(m);
        }
        if (means.empty()) throw ConfigError("key 'means': empty list");
        const std::string dist = doc.get_or("instance", "dist", "bernoulli");
        if (dist != "bernoulli" && dist != "deterministic") {
            throw ConfigError("unknown dist '" + dist + "' (want bernoulli or deterministic)");
        }
        instance = BanditInstance(std::move(means), dist == "bernoulli"
                                                        ? DistKind::kBernoulli
                                                        : DistKind::kDeterministic);
    }

    ExperimentSetup setup{instance};

    // Channel.
    if (doc.has("channel", "epsilon") == doc.has("channel", "epsilons")) {
        throw ConfigError("give exactly one of 'epsilon' or 'epsilons' in [channel]");
    }
    const bool plural = doc.has("channel", "epsilons");
    for (const std::string& token :
         split_list(doc.get("channel", plural ? "epsilons" : "epsilon"))) {
        const double eps = parse_double("epsilon", token);
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw ConfigError("epsilon " + token + " must lie in [0,1)");
        }
        setup.epsilons.push_back(eps);
    }
    if (setup.epsilons.empty()) throw ConfigError("key 'epsilon': empty list");

    const std::string fallback = doc.get_or("channel", "fallback", "last_received");
    if (fallback == "last_received") {
        setup.fallback = FallbackKind::kLastReceived;
    } else if (fallback == "random_on_erasure") {
        setup.fallback = FallbackKind::kRandomOnErasure;
    } else if (fallback == "fixed_arm") {
        setup.fallback = FallbackKind::kFixedArm;
        setup.fixed_arm = static_cast<int>(
            parse_int("fixed_arm", doc.get("channel", "fixed_arm")));
    } else {
        throw ConfigError("unknown fallback '" + fallback + "'");
    }
    if (fallback != "fixed_arm" && doc.has("channel", "fixed_arm")) {
        throw ConfigError("'fixed_arm' is only valid with fallback = fixed_arm");
    }

    // Policy.
    setup.policy = parse_policy_kind(doc);
    if (doc.has("policy", "inner") && doc.get("policy", "kind") != "repeat") {
        throw ConfigError("'inner' is only valid with kind = repeat");
    }
    setup.c_prime = parse_double("c_prime", doc.get_or("policy", "c_prime", "1.0"));

    // Run.
    setup.horizon = parse_int("T", doc.get("run", "T"));
    if (setup.horizon < 0) throw ConfigError("T must be >= 0");
    setup.base_seed =
        static_cast<std::uint64_t>(parse_int("seed", doc.get("run", "seed")));
    setup.reps = static_cast<int>(parse_int("reps", doc.get_or("run", "reps", "100")));
    if (doc.has("run", "checkpoints")) {
        for (const std::string& token : split_list(doc.get("run", "checkpoints"))) {
            setup.checkpoints.push_back(parse_int("checkpoints", token));
        }
    }

    setup.output_dir = doc.get_or("output", "dir", "out");

    try {
        setup.validate();
        if (setup.policy == PolicyKind::kMultiAgent && setup.horizon > 0) {
            // Derives per-agent repetition counts; rejects bad epsilons early.
            MultiAgentConfig::make(setup.epsilons, setup.instance.num_arms(),
                                   setup.horizon);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return setup;
}

std::string format_full(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

}  // namespace

ExperimentSetup parse_config(const std::string& text) {
    return setup_from_document(Document(text, /*allow_sweep=*/false));
}

std::string render_config(const ExperimentSetup& setup) {
    std::ostringstream out;
    out << "[instance]\n";
    out << "means = ";
    const std::vector<double>& means = setup.instance.means();
    for (std::size_t j = 0; j < means.size(); ++j) {
        out << (j ? ", " : "") << format_full(means[j]);
    }
    out << "\n";
    out << "dist = "
        << (setup.instance.dist_kind() == DistKind::kBernoulli ? "bernoulli"
                                                               : "deterministic")
        << "\n";
    out << "[channel]\n";
    if (setup.epsilons.size() == 1) {
        out << "epsilon = " << format_full(setup.epsilons[0]) << "\n";
    } else {
        out << "epsilons = ";
        for (std::size_t j = 0; j < setup.epsilons.size(); ++j) {
            out << (j ? ", " : "") << format_full(setup.epsilons[j]);
        }
        out << "\n";
    }
    switch (setup.fallback) {
        case FallbackKind::kLastReceived:
            out << "fallback = last_received\n";
            break;
        case FallbackKind::kRandomOnErasure:
            out << "fallback = random_on_erasure\n";
            break;
        case FallbackKind::kFixedArm:
            out << "fallback = fixed_arm\n";
            out << "fixed_arm = " << setup.fixed_arm << "\n";
            break;
    }
    out << "[policy]\n";
    out << "kind = " << policy_kind_name(setup.policy) << "\n";
    out << "c_prime = " << format_full(setup.c_prime) << "\n";
    out << "[run]\n";
    out << "T = " << setup.horizon << "\n";
    out << "reps = " << setup.reps << "\n";
    out << "seed = " << setup.base_seed << "\n";
    if (!setup.checkpoints.empty()) {
        out << "checkpoints = ";
        for (std::size_t j = 0; j < setup.checkpoints.size(); ++j) {
            out << (j ? ", " : "") << setup.checkpoints[j];
        }
        out << "\n";
    }
    out << "[output]\n";
    out << "dir = " << setup.output_dir << "\n";
    return out.str();
}

std::vector<SweepCell> parse_sweep_config(const std::string& text) {
    const Document doc(text, /*allow_sweep=*/true);
    const ExperimentSetup base = setup_from_document(doc);

    struct Axis {
        std::string key;
        std::vector<std::string> values;
    };
    std::vector<Axis> axes;
    for (const std::string& key : doc.sweep_order()) {
        Axis axis{key, split_list(doc.get("sweep", key))};
        if (axis.values.empty()) {
            throw ConfigError("sweep key '" + key + "': empty list");
        }
        axes.push_back(std::move(axis));
    }
    if (axes.empty()) throw ConfigError("sweep file has no [sweep] axes");

    std::vector<SweepCell> cells;
    std::vector<std::size_t> odometer(axes.size(), 0);
    for (;;) {
        SweepCell cell{base, {}};
        for (std::size_t d = 0; d < axes.size(); ++d) {
            const std::string& key = axes[d].key;
            const std::string& value = axes[d].values[odometer[d]];
            if (key == "epsilon") {
                const double eps = parse_double("epsilon", value);
                if (!(eps >= 0.0 && eps < 1.0)) {
                    throw ConfigError("sweep epsilon " + value + " must lie in [0,1)");
                }
                cell.setup.epsilons.assign(1, eps);
            } else if (key == "T") {
                cell.setup.horizon = parse_int("T", value);
                cell.setup.checkpoints.clear();
            } else if (key == "policy") {
                cell.setup.policy = parse_policy_token(value);
            }
            cell.overrides.emplace_back(key, value);
        }
        try {
            cell.setup.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        cells.push_back(std::move(cell));
        // Advance, last axis fastest (first declared key outermost).
        std::size_t d = axes.size();
        while (d > 0) {
            --d;
            if (++odometer[d] < axes[d].values.size()) break;
            odometer[d] = 0;
            if (d == 0) return cells;
        }
    }
}

}  // namespace eb
