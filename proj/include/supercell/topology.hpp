#pragma once

#include <optional>
#include <vector>

#include "supercell/config.hpp"
#include "supercell/geometry.hpp"
#include "supercell/rng.hpp"

namespace supercell {

enum class Tier { Macro, Phantom };

struct BaseStation {
    int id = 0;
    Tier tier = Tier::Macro;
    Point2D position;
    double tx_power_w = 0.0;
    double radius_m = 0.0;
};

struct UserTerminal {
    int id = 0;
    Point2D position;
    std::optional<int> home_cell;  // phantom id of the disk containing the user
};

// One Super cell: a macro disk containing pairwise-disjoint phantom disks
// containing users, plus optional macro-only users outside every phantom disk.
struct Topology {
    BaseStation macro_bts;
    std::vector<BaseStation> phantom_bts;
    std::vector<UserTerminal> users;

    const BaseStation* phantom_by_id(int cell_id) const;
    // User ids of each phantom cell's members, grouped and sorted.
    std::vector<std::vector<int>> users_by_cell() const;
    // Checks the geometric invariants; throws ValidationError on violation.
    void validate(const SimConfig& cfg) const;
};

// Even split of `total` users over `cells` cells, remainder going to the
// lowest cell ids.
std::vector<int> split_users_per_cell(int total, int cells);

// Macro BTS at the origin; phantom centers uniform in the disk of radius
// macro_radius - phantom_radius with rejection on overlap; users uniform
// within each phantom disk; macro-only users uniform in the macro disk
// outside all phantom disks. Throws PlacementExhausted when the rejection
// budget runs out.
Topology generate_topology(const SimConfig& cfg, Rng& rng);

}  // namespace supercell
