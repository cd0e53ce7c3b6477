#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace supercell {

enum class DistanceUnit { Meters, Kilometers };

// How cost ties are resolved by the planner. PreferWider keeps the user
// on the wider tier (macro over phantom, direct over cluster);
// PreferNarrower does the opposite.
enum class TieBreakPolicy { PreferWider, PreferNarrower };

// Path loss in dB: fixed_db + slope_db * log10(d), with d expressed in
// the model's distance unit.
struct PathLossModel {
    double fixed_db = 0.0;
    double slope_db = 0.0;
    DistanceUnit unit = DistanceUnit::Meters;

    double at(double distance_m) const {
        const double d = unit == DistanceUnit::Kilometers ? distance_m / 1000.0 : distance_m;
        return fixed_db + slope_db * std::log10(d);
    }
};

// Full simulation configuration. One flat key per field; the config-file
// key names are listed in README.md and match the field names below.
struct SimConfig {
    // --- scenario parameters ---
    double macro_radius_m = 500.0;
    double phantom_radius_m = 50.0;
    int phantom_count = 10;
    double bandwidth_hz = 10e6;
    double service_bits = 1e9;           // payload volume per broadcast session
    double tx_m_w = 40.0;                // macro BTS transmit power draw
    double tx_ph_w = 10.0;               // phantom BTS transmit power draw
    double tx_d_w = 0.125;               // cluster-head D2D transmit power draw
    double rx_m_w = 1.8;                 // receiver power draw on an M-Link
    double rx_ph_w = 1.2;                // receiver power draw on a PH-Link
    double rx_d_w = 0.9;                 // receiver power draw on a D-Link
    double noise_density_dbm_hz = -147.0;
    double shadowing_db = 8.0;           // see shadowing_is_variance
    PathLossModel path_loss_macro{128.0, 37.6, DistanceUnit::Kilometers};
    PathLossModel path_loss_phantom{37.0, 20.0, DistanceUnit::Meters};
    PathLossModel path_loss_d2d{42.0, 16.9, DistanceUnit::Meters};

    // --- model knobs ---
    double min_distance_m = 1.0;         // floor on all link distances
    double rate_floor_bps = 1e3;         // below this a link is in outage
    bool shadowing_is_variance = false;  // reinterpret shadowing_db as dB^2
    bool disable_shadowing = false;
    bool disable_fading = false;
    bool allow_phantom_overlap = false;
    int placement_retry_budget = 10000;  // rejected draws before PlacementExhausted
    int macro_only_users = 0;            // users placed outside every phantom disk
    bool strict_eq3_min = false;         // phantom tx min over all cell users, not just BTS-served
    bool candidate_all_phantoms = false; // designation considers every phantom BTS
    TieBreakPolicy tie_break_policy = TieBreakPolicy::PreferWider;
    bool independent_scenario_draws = false;  // fresh channel per scenario instead of paired
    bool include_pure_eq3 = false;       // also evaluate clustering without BTS designation

    // --- experiment parameters ---
    int total_users = 100;               // users split evenly across phantom cells
    std::vector<int> sweep_users = {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    int trials = 200;
    std::uint64_t master_seed = 1;
    int workers = 1;                     // 0 = hardware concurrency

    // Shadowing standard deviation actually used for draws.
    double shadowing_sigma_db() const {
        if (disable_shadowing) return 0.0;
        return shadowing_is_variance ? std::sqrt(shadowing_db) : shadowing_db;
    }

    // Throws ValidationError naming the offending field.
    void validate() const;
};

const char* to_string(DistanceUnit u);
const char* to_string(TieBreakPolicy p);
DistanceUnit distance_unit_from_string(const std::string& s);
TieBreakPolicy tie_break_from_string(const std::string& s);

}  // namespace supercell
