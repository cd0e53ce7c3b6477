#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supercell/energy.hpp"

namespace supercell {

// One Monte Carlo trial: all scenarios evaluated on the same topology and
// channel snapshot (paired comparison), unless independent draws are
// configured.
struct TrialReport {
    int trial_index = 0;
    std::uint64_t seed = 0;
    int user_count = 0;
    bool rejected = false;
    std::string reject_reason;

    std::optional<EnergyReport> macro;     // Situation 1
    std::optional<EnergyReport> phantom;   // Situation 2
    std::optional<EnergyReport> hybrid;    // the greedy plan, mixed links
    std::optional<EnergyReport> supercell; // pure Eq. 3 clustering (optional)
};

struct SweepRow {
    int users = 0;
    Scenario scenario = Scenario::Macro;
    double mean_energy_j = 0.0;
    double std_energy_j = 0.0;
    double ci95_j = 0.0;
    int trials = 0;    // aggregated (non-rejected) trials
    int rejected = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;  // sorted by (users, scenario name)
};

// trial seed = mix(mix(mix(master_seed) ^ trial_index) ^ user_count),
// with mix the splitmix64 finalizer (see rng.hpp and README).
std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index, int user_count);

TrialReport run_trial(const SimConfig& cfg, int trial_index);
TrialReport run_trial(const SimConfig& cfg, int trial_index, int user_count);

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;   // sample std, n-1 denominator
    double ci95 = 0.0;     // 1.96 * stddev / sqrt(n)
    int n = 0;
};

// Throws InsufficientTrials on empty input.
Aggregate aggregate(const std::vector<double>& values);

// Per-scenario rows for one sweep point. Throws InsufficientTrials when
// every trial was rejected.
std::vector<SweepRow> aggregate_trials(const std::vector<TrialReport>& trials, int user_count);

// Runs cfg.trials trials per sweep point on cfg.workers threads. Output is
// identical to sequential execution: seeds derive from the trial index and
// results are merged in trial order.
SweepReport sweep_users(const SimConfig& cfg);

}  // namespace supercell
