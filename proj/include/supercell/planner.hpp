#pragma once

#include <map>
#include <vector>

#include "supercell/energy.hpp"
#include "supercell/plan.hpp"

namespace supercell {

// Stage-1 output: which BTS serves each user before clustering.
struct Designation {
    std::vector<int> macro_users;              // sorted by user id
    std::map<int, std::vector<int>> cell_users;  // cell id -> sorted user ids
};

// Per user, compare the per-user macro cost against the candidate phantom
// cost(s); assign to the phantom tier when strictly lower (ties follow the
// configured policy). Outage links are excluded from the candidate set;
// throws NoFeasibleLink when a user has none left.
Designation designate_bts(const ChannelSnapshot& snapshot, const Topology& topology,
                          const PowerProfile& profile, const SimConfig& cfg);

// Clustering result for one phantom cell.
struct CellPlan {
    std::vector<Cluster> clusters;
    std::vector<int> direct_users;
};

// Greedy clustering of one cell: repeatedly pick the unassigned user with
// the best PH-Link rate as candidate head, attach every unassigned user
// whose D-Link cost to that head is strictly below its direct PH-Link
// cost, and emit either a cluster or a direct user. Terminates in at most
// |cell_users| iterations.
CellPlan cluster_cell(int cell_id, const std::vector<int>& cell_users,
                      const ChannelSnapshot& snapshot, const PowerProfile& profile,
                      const SimConfig& cfg);

// Both stages composed; the output satisfies the ServingPlan invariants.
ServingPlan build_plan(const ChannelSnapshot& snapshot, const Topology& topology,
                       const PowerProfile& profile, const SimConfig& cfg);

inline constexpr int kBruteForceMaxUsers = 8;

// Exhaustive minimum over all partitions of one cell's users into direct
// users and head-designated clusters, under the Eq.-3 cell objective.
// Throws TooLarge above kBruteForceMaxUsers.
CellPlan brute_force_plan(int cell_id, const std::vector<int>& cell_users,
                          const ChannelSnapshot& snapshot, const PowerProfile& profile,
                          const SimConfig& cfg);

// Convenience: the Eq.-3 cell energy of a CellPlan (outages count as +inf).
double cell_plan_energy(int cell_id, const CellPlan& plan, const ChannelSnapshot& snapshot,
                        const PowerProfile& profile, const SimConfig& cfg);

}  // namespace supercell
