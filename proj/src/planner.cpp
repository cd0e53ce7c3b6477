#include "supercell/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "supercell/errors.hpp"

namespace supercell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Outage links are excluded from candidate sets by costing them infinity.
double cost_or_inf(const LinkBudget* budget, const PowerProfile& profile, double rate_floor_bps) {
    if (!budget || budget->in_outage) return kInf;
    return per_user_cost(budget->link_type, budget->rate_bps, profile, rate_floor_bps);
}

}  // namespace

Designation designate_bts(const ChannelSnapshot& snapshot, const Topology& topology,
                          const PowerProfile& profile, const SimConfig& cfg) {
    std::vector<int> user_ids;
    user_ids.reserve(snapshot.users().size());
    for (const auto& u : snapshot.users()) user_ids.push_back(u.id);
    std::sort(user_ids.begin(), user_ids.end());

    Designation designation;
    for (int uid : user_ids) {
        const UserTerminal& u = snapshot.user(uid);
        const double macro_cost =
            cost_or_inf(&snapshot.macro_budget(uid), profile, cfg.rate_floor_bps);

        // Candidate phantom links: the home cell, or every cell when the
        // candidate set is widened. Ties between cells keep the lowest id.
        double best_ph_cost = kInf;
        int best_cell = -1;
        if (cfg.candidate_all_phantoms) {
            for (const auto& bts : topology.phantom_bts) {
                const double c = cost_or_inf(snapshot.phantom_budget(uid, bts.id), profile,
                                             cfg.rate_floor_bps);
                if (c < best_ph_cost) {
                    best_ph_cost = c;
                    best_cell = bts.id;
                }
            }
        } else if (u.home_cell) {
            best_ph_cost = cost_or_inf(snapshot.phantom_budget(uid, *u.home_cell), profile,
                                       cfg.rate_floor_bps);
            best_cell = *u.home_cell;
        }

        if (!std::isfinite(macro_cost) && !std::isfinite(best_ph_cost)) {
            throw NoFeasibleLink("user " + std::to_string(uid) +
                                 " has no serving link above the rate floor");
        }

        const bool phantom_wins = cfg.tie_break_policy == TieBreakPolicy::PreferWider
                                      ? best_ph_cost < macro_cost
                                      : best_ph_cost <= macro_cost && std::isfinite(best_ph_cost);
        if (phantom_wins) {
            designation.cell_users[best_cell].push_back(uid);
        } else {
            designation.macro_users.push_back(uid);
        }
    }
    return designation;
}

CellPlan cluster_cell(int cell_id, const std::vector<int>& cell_users,
                      const ChannelSnapshot& snapshot, const PowerProfile& profile,
                      const SimConfig& cfg) {
    CellPlan plan;
    std::vector<int> unassigned = cell_users;
    std::sort(unassigned.begin(), unassigned.end());

    const auto ph_rate = [&](int uid) {
        const LinkBudget* b = snapshot.phantom_budget(uid, cell_id);
        if (!b)
            throw SimError("no PH-Link budget for user " + std::to_string(uid) + " in cell " +
                           std::to_string(cell_id));
        return b->rate_bps;
    };

    while (!unassigned.empty()) {
        // (a) best PH-Link rate becomes the candidate head; rate ties keep
        // the lowest user id (first seen in ascending order).
        int head = unassigned.front();
        double head_rate = ph_rate(head);
        for (int uid : unassigned) {
            const double r = ph_rate(uid);
            if (r > head_rate) {
                head = uid;
                head_rate = r;
            }
        }

        // (b) join when relaying through the head is cheaper than direct
        // reception, strictly under the default tie-break policy.
        std::vector<int> joined;
        for (int uid : unassigned) {
            if (uid == head) continue;
            const double ph_cost =
                cost_or_inf(snapshot.phantom_budget(uid, cell_id), profile, cfg.rate_floor_bps);
            const double d_cost =
                cost_or_inf(&snapshot.dlink_budget(head, uid), profile, cfg.rate_floor_bps);
            const bool joins = cfg.tie_break_policy == TieBreakPolicy::PreferWider
                                   ? d_cost < ph_cost
                                   : d_cost <= ph_cost && std::isfinite(d_cost);
            if (joins) joined.push_back(uid);
        }

        // (c) emit a cluster, or a direct user when nobody joined.
        if (joined.empty()) {
            plan.direct_users.push_back(head);
        } else {
            plan.clusters.push_back({cell_id, head, joined});
        }

        // (d) continue on the remainder.
        std::vector<int> rest;
        for (int uid : unassigned) {
            if (uid == head) continue;
            if (std::find(joined.begin(), joined.end(), uid) != joined.end()) continue;
            rest.push_back(uid);
        }
        unassigned = std::move(rest);
    }

    std::sort(plan.direct_users.begin(), plan.direct_users.end());
    return plan;
}

ServingPlan build_plan(const ChannelSnapshot& snapshot, const Topology& topology,
                       const PowerProfile& profile, const SimConfig& cfg) {
    const Designation designation = designate_bts(snapshot, topology, profile, cfg);

    ServingPlan plan;
    plan.macro_users = designation.macro_users;
    for (const auto& [cell_id, users] : designation.cell_users) {
        CellPlan cell = cluster_cell(cell_id, users, snapshot, profile, cfg);
        for (int uid : cell.direct_users) plan.direct_phantom_users.emplace_back(cell_id, uid);
        for (auto& c : cell.clusters) plan.clusters.push_back(std::move(c));
    }
    return plan;
}

double cell_plan_energy(int cell_id, const CellPlan& plan, const ChannelSnapshot& snapshot,
                        const PowerProfile& profile, const SimConfig& cfg) {
    return eval_cell_eq3(cell_id, plan.direct_users, plan.clusters, snapshot, profile,
                         cfg.strict_eq3_min, OutagePolicy::Infinite)
        .total();
}

namespace {

// Enumerates head choices for each multi-user block of one partition and
// keeps the cheapest candidate seen so far.
void enumerate_heads(int cell_id, const std::vector<std::vector<int>>& blocks,
                     std::size_t block_index, CellPlan& candidate,
                     const ChannelSnapshot& snapshot, const PowerProfile& profile,
                     const SimConfig& cfg, double& best_cost, CellPlan& best_plan) {
    if (block_index == blocks.size()) {
        const double cost = cell_plan_energy(cell_id, candidate, snapshot, profile, cfg);
        if (cost < best_cost) {
            best_cost = cost;
            best_plan = candidate;
        }
        return;
    }
    const auto& block = blocks[block_index];
    if (block.size() == 1) {
        candidate.direct_users.push_back(block.front());
        enumerate_heads(cell_id, blocks, block_index + 1, candidate, snapshot, profile, cfg,
                        best_cost, best_plan);
        candidate.direct_users.pop_back();
        return;
    }
    for (int head : block) {
        Cluster cluster{cell_id, head, {}};
        for (int uid : block) {
            if (uid != head) cluster.members.push_back(uid);
        }
        candidate.clusters.push_back(std::move(cluster));
        enumerate_heads(cell_id, blocks, block_index + 1, candidate, snapshot, profile, cfg,
                        best_cost, best_plan);
        candidate.clusters.pop_back();
    }
}

// Recursive set-partition enumeration (restricted growth strings).
void enumerate_partitions(int cell_id, const std::vector<int>& users, std::size_t next,
                          std::vector<std::vector<int>>& blocks, const ChannelSnapshot& snapshot,
                          const PowerProfile& profile, const SimConfig& cfg, double& best_cost,
                          CellPlan& best_plan) {
    if (next == users.size()) {
        CellPlan candidate;
        enumerate_heads(cell_id, blocks, 0, candidate, snapshot, profile, cfg, best_cost,
                        best_plan);
        return;
    }
    for (auto& block : blocks) {
        block.push_back(users[next]);
        enumerate_partitions(cell_id, users, next + 1, blocks, snapshot, profile, cfg, best_cost,
                             best_plan);
        block.pop_back();
    }
    blocks.push_back({users[next]});
    enumerate_partitions(cell_id, users, next + 1, blocks, snapshot, profile, cfg, best_cost,
                         best_plan);
    blocks.pop_back();
}

}  // namespace

CellPlan brute_force_plan(int cell_id, const std::vector<int>& cell_users,
                          const ChannelSnapshot& snapshot, const PowerProfile& profile,
                          const SimConfig& cfg) {
    if (cell_users.size() > static_cast<std::size_t>(kBruteForceMaxUsers)) {
        throw TooLarge("brute-force clustering is bounded at " +
                       std::to_string(kBruteForceMaxUsers) + " users per cell, got " +
                       std::to_string(cell_users.size()));
    }
    CellPlan best;
    if (cell_users.empty()) return best;

    std::vector<int> users = cell_users;
    std::sort(users.begin(), users.end());

    double best_cost = kInf;
    std::vector<std::vector<int>> blocks;
    enumerate_partitions(cell_id, users, 0, blocks, snapshot, profile, cfg, best_cost, best);
    std::sort(best.direct_users.begin(), best.direct_users.end());
    return best;
}

}  // namespace supercell
