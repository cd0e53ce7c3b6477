#include "supercell/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "supercell/errors.hpp"
#include "supercell/planner.hpp"
#include "supercell/rng.hpp"

namespace supercell {

std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index, int user_count) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(trial_index),
                       static_cast<std::uint64_t>(user_count));
}

namespace {

// Sub-stream tags under the trial seed.
constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kChannelStream = 2;

ChannelSnapshot scenario_snapshot(const Topology& topology, const SimConfig& cfg,
                                  std::uint64_t seed, std::uint64_t scenario_index) {
    Rng rng(derive_seed(seed, kChannelStream, scenario_index));
    return build_snapshot(topology, cfg, rng);
}

// Clustering without the BTS-designation stage: every user stays in its
// home cell. Used for the optional pure-Eq.-3 evaluation.
ServingPlan clustering_only_plan(const ChannelSnapshot& snapshot, const Topology& topology,
                                 const PowerProfile& profile, const SimConfig& cfg) {
    ServingPlan plan;
    const auto groups = topology.users_by_cell();
    for (std::size_t i = 0; i < topology.phantom_bts.size(); ++i) {
        const int cell_id = topology.phantom_bts[i].id;
        if (groups[i].empty()) continue;
        CellPlan cell = cluster_cell(cell_id, groups[i], snapshot, profile, cfg);
        for (int uid : cell.direct_users) plan.direct_phantom_users.emplace_back(cell_id, uid);
        for (auto& c : cell.clusters) plan.clusters.push_back(std::move(c));
    }
    return plan;
}

}  // namespace

TrialReport run_trial(const SimConfig& cfg, int trial_index) {
    return run_trial(cfg, trial_index, cfg.total_users);
}

TrialReport run_trial(const SimConfig& cfg, int trial_index, int user_count) {
    SimConfig trial_cfg = cfg;
    trial_cfg.total_users = user_count;
    trial_cfg.validate();

    TrialReport report;
    report.trial_index = trial_index;
    report.user_count = user_count;
    report.seed = trial_seed(cfg.master_seed, trial_index, user_count);

    Rng topo_rng(derive_seed(report.seed, kTopologyStream));
    const Topology topology = generate_topology(trial_cfg, topo_rng);
    const PowerProfile profile = PowerProfile::from_config(trial_cfg);

    // Paired comparison by default: every scenario sees the same snapshot.
    const ChannelSnapshot shared = scenario_snapshot(topology, trial_cfg, report.seed, 0);
    const auto snapshot_for = [&](std::uint64_t scenario_index) -> ChannelSnapshot {
        if (!trial_cfg.independent_scenario_draws) return shared;
        return scenario_snapshot(topology, trial_cfg, report.seed, scenario_index);
    };

    try {
        {
            const ChannelSnapshot snap = snapshot_for(0);
            report.macro = energy_situation1(snap, profile);
        }
        {
            const ChannelSnapshot snap = snapshot_for(1);
            report.phantom = energy_situation2(snap, topology, profile);
        }
        {
            const ChannelSnapshot snap = snapshot_for(2);
            const ServingPlan plan = build_plan(snap, topology, profile, trial_cfg);
            report.hybrid = energy_hybrid(snap, plan, profile, trial_cfg.strict_eq3_min);
        }
        if (trial_cfg.include_pure_eq3) {
            const ChannelSnapshot snap = snapshot_for(3);
            const ServingPlan plan = clustering_only_plan(snap, topology, profile, trial_cfg);
            report.supercell = energy_situation3(snap, plan, profile, trial_cfg.strict_eq3_min);
        }
    } catch (const OutageInScenario& e) {
        report.rejected = true;
        report.reject_reason = e.what();
    } catch (const NoFeasibleLink& e) {
        report.rejected = true;
        report.reject_reason = e.what();
    }

    if (report.rejected) {
        report.macro.reset();
        report.phantom.reset();
        report.hybrid.reset();
        report.supercell.reset();
    }
    return report;
}

Aggregate aggregate(const std::vector<double>& values) {
    if (values.empty()) throw InsufficientTrials("no usable trials to aggregate");
    Aggregate a;
    a.n = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / a.n;
    if (a.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - a.mean) * (v - a.mean);
        a.stddev = std::sqrt(ss / (a.n - 1));
    }
    a.ci95 = a.n > 0 ? 1.96 * a.stddev / std::sqrt(static_cast<double>(a.n)) : 0.0;
    return a;
}

std::vector<SweepRow> aggregate_trials(const std::vector<TrialReport>& trials, int user_count) {
    int rejected = 0;
    struct Series {
        Scenario scenario;
        std::vector<double> totals;
    };
    // Ordered by scenario name, matching the CSV sort contract.
    std::vector<Series> series = {{Scenario::Hybrid, {}},
                                  {Scenario::Macro, {}},
                                  {Scenario::Phantom, {}},
                                  {Scenario::SuperCell, {}}};
    const auto totals_of = [](const TrialReport& t, Scenario s) -> const std::optional<EnergyReport>& {
        switch (s) {
            case Scenario::Macro: return t.macro;
            case Scenario::Phantom: return t.phantom;
            case Scenario::Hybrid: return t.hybrid;
            case Scenario::SuperCell: return t.supercell;
        }
        return t.macro;
    };

    for (const auto& t : trials) {
        if (t.rejected) {
            ++rejected;
            continue;
        }
        for (auto& s : series) {
            const auto& r = totals_of(t, s.scenario);
            if (r) s.totals.push_back(r->total_j);
        }
    }

    std::vector<SweepRow> rows;
    for (const auto& s : series) {
        if (s.totals.empty()) continue;  // scenario not evaluated in this run
        const Aggregate a = aggregate(s.totals);
        rows.push_back({user_count, s.scenario, a.mean, a.stddev, a.ci95, a.n, rejected});
    }
    if (rows.empty()) {
        throw InsufficientTrials("all " + std::to_string(trials.size()) +
                                 " trials at user count " + std::to_string(user_count) +
                                 " were rejected");
    }
    return rows;
}

SweepReport sweep_users(const SimConfig& cfg) {
    cfg.validate();
    const int workers = cfg.workers == 0
                            ? std::max(1u, std::thread::hardware_concurrency())
                            : cfg.workers;

    SweepReport report;
    for (int user_count : cfg.sweep_users) {
        std::vector<TrialReport> trials(static_cast<std::size_t>(cfg.trials));
        if (workers == 1) {
            for (int i = 0; i < cfg.trials; ++i) trials[static_cast<std::size_t>(i)] = run_trial(cfg, i, user_count);
        } else {
            std::atomic<int> next{0};
            std::exception_ptr first_error;
            std::mutex error_mutex;
            auto worker = [&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= cfg.trials) return;
                    try {
                        trials[static_cast<std::size_t>(i)] = run_trial(cfg, i, user_count);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            };
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            if (first_error) std::rethrow_exception(first_error);
        }

        // Merge in trial-index order: output is independent of worker count.
        for (auto& row : aggregate_trials(trials, user_count)) report.rows.push_back(row);
    }
    return report;
}

}  // namespace supercell
