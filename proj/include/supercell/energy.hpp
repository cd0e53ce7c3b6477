#pragma once

#include <string>
#include <vector>

#include "supercell/channel.hpp"
#include "supercell/plan.hpp"

namespace supercell {

// Transmit/receive power draw per tier plus the service volume.
struct PowerProfile {
    double tx_m = 40.0;     // watts
    double tx_ph = 10.0;
    double tx_d = 0.125;
    double rx_m = 1.8;
    double rx_ph = 1.2;
    double rx_d = 0.9;
    double service_bits = 1e9;

    static PowerProfile from_config(const SimConfig& cfg);
    double tx_for(LinkType t) const;
    double rx_for(LinkType t) const;
};

enum class Scenario { Macro, Phantom, SuperCell, Hybrid };

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct CellEnergy {
    int cell_id = 0;
    double energy_j = 0.0;
};

// Itemized energy for one scenario on one snapshot.
// total_j = tx_macro_j + tx_phantom_j + tx_d2d_j + rx_total_j.
struct EnergyReport {
    Scenario scenario = Scenario::Macro;
    double total_j = 0.0;
    double tx_macro_j = 0.0;
    double tx_phantom_j = 0.0;
    double tx_d2d_j = 0.0;
    double rx_total_j = 0.0;
    std::vector<CellEnergy> per_cell;
    int outage_users = 0;
};

// Situation 1: everyone served by the macro BTS.
// total = S tx_m / min_k R_k + sum_k S rx_m / R_k over macro-link rates.
EnergyReport energy_situation1(const ChannelSnapshot& snapshot, const PowerProfile& profile);

// Situation 2: every user served directly by its home phantom BTS.
// total = sum_i [ S tx_ph / min_k R_{k,i} + sum_k S rx_ph / R_{k,i} ].
// Empty cells contribute zero.
EnergyReport energy_situation2(const ChannelSnapshot& snapshot, const Topology& topology,
                               const PowerProfile& profile);

// Situation 3: phantom BTSs feed cluster heads and direct users; heads
// multicast to members over D-Links. The plan must cover every user with
// no macro assignments. With strict_eq3_min the per-cell phantom transmit
// denominator is the minimum PH-Link rate over all of the cell's users
// instead of only the BTS-served ones.
EnergyReport energy_situation3(const ChannelSnapshot& snapshot, const ServingPlan& plan,
                               const PowerProfile& profile, bool strict_eq3_min = false);

// Mixed assignment of all three link types, as produced by the planner.
EnergyReport energy_hybrid(const ChannelSnapshot& snapshot, const ServingPlan& plan,
                           const PowerProfile& profile, bool strict_eq3_min = false);

// Marginal energy if this link served this user alone:
// S (P_T + P_R) / rate. Throws OutageError below the rate floor.
double per_user_cost(LinkType link_type, double rate_bps, const PowerProfile& profile,
                     double rate_floor_bps);

// Eq.-3-style energy of a single cell under a candidate clustering.
struct CellEq3Terms {
    double tx_phantom_j = 0.0;
    double tx_d2d_j = 0.0;
    double rx_j = 0.0;
    double total() const { return tx_phantom_j + tx_d2d_j + rx_j; }
};

enum class OutagePolicy { Throw, Infinite };

// Shared per-cell evaluation used by the scenario evaluators and the
// brute-force clustering oracle. With OutagePolicy::Infinite an outage
// link makes the cell energy infinite instead of throwing.
CellEq3Terms eval_cell_eq3(int cell_id, const std::vector<int>& direct_users,
                           const std::vector<Cluster>& clusters, const ChannelSnapshot& snapshot,
                           const PowerProfile& profile, bool strict_eq3_min,
                           OutagePolicy outage_policy);

}  // namespace supercell
