#pragma once

#include <utility>
#include <vector>

#include "supercell/topology.hpp"

namespace supercell {

// One D2D cluster: the head receives from the phantom BTS and multicasts
// to the members. Singleton heads are represented as direct users, never
// as empty clusters.
struct Cluster {
    int cell_id = 0;
    int head = 0;
    std::vector<int> members;  // excluding the head
};

// Per-user serving decision: the three sets partition all users.
struct ServingPlan {
    std::vector<int> macro_users;
    std::vector<std::pair<int, int>> direct_phantom_users;  // (cell id, user id)
    std::vector<Cluster> clusters;

    std::size_t covered_users() const;
};

// Checks the partition and cell-membership invariants against a topology.
// When allow_foreign_cells is set (candidate_all_phantoms runs), users may
// be assigned to phantom cells other than their home cell.
void validate_plan(const ServingPlan& plan, const Topology& topology,
                   bool allow_foreign_cells = false);

}  // namespace supercell
