#pragma once

#include <string>

#include "erasure_bandits/harness.hpp"

namespace eb {

// Fixed-decimal rendering with 9 significant digits (1.5 -> "1.50000000").
std::string format_fixed9(double x);

// CSV body: header `t,mean_regret,std,ci95,reps,seed,config_hash`, one row
// per checkpoint, '\n' newlines. Byte-identical for identical stats.
std::string results_csv_string(const RegretStats& stats);

// Writes results_csv_string to `path`; throws std::runtime_error naming the
// path on I/O failure.
void write_results_csv(const RegretStats& stats, const std::string& path);

}  // namespace eb
