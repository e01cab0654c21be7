#include "erasure_bandits/results_csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eb {

std::string format_fixed9(double x) {
    char buffer[64];
    if (!std::isfinite(x)) {
        std::snprintf(buffer, sizeof(buffer), "%f", x);
        return buffer;
    }
    const double ax = std::fabs(x);
    int decimals = 8;
    if (ax >= 1.0) {
        decimals = 8 - static_cast<int>(std::floor(std::log10(ax)));
        if (decimals < 0) decimals = 0;
    } else if (ax > 0.0) {
        decimals = 8 - static_cast<int>(std::floor(std::log10(ax)));
        if (decimals > 40) decimals = 40;
    }
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, x);
    return buffer;
}

std::string results_csv_string(const RegretStats& stats) {
    std::ostringstream out;
    out << "t,mean_regret,std,ci95,reps,seed,config_hash\n";
    for (const CheckpointStat& p : stats.points) {
        out << p.t << ',' << format_fixed9(p.mean_regret) << ','
            << format_fixed9(p.stddev) << ',' << format_fixed9(p.ci95) << ','
            << stats.reps << ',' << stats.base_seed << ',' << stats.config_hash
            << '\n';
    }
    return out.str();
}

void write_results_csv(const RegretStats& stats, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << results_csv_string(stats);
    if (!file.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace eb
