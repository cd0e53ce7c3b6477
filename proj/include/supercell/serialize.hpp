#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "supercell/channel.hpp"
#include "supercell/config.hpp"
#include "supercell/harness.hpp"
#include "supercell/plan.hpp"
#include "supercell/topology.hpp"

namespace supercell {

inline constexpr const char* kToolVersion = "supercell 0.1.0";

// --- config file -----------------------------------------------------------

// Flat "key = value" file; '#' starts a comment; unknown keys are errors;
// missing keys take the defaults.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& text);
// Fully resolved config as a JSON object, one entry per key.
// `workers` is an execution knob, not an experiment parameter, and is
// excluded so reruns with different parallelism stay byte-identical.
nlohmann::json config_to_json(const SimConfig& cfg);

// --- JSON schemas ----------------------------------------------------------

nlohmann::json topology_to_json(const Topology& topology);
Topology topology_from_json(const nlohmann::json& j);

nlohmann::json snapshot_to_json(const ChannelSnapshot& snapshot);
ChannelSnapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const ServingPlan& plan);
ServingPlan plan_from_json(const nlohmann::json& j);

nlohmann::json energy_report_to_json(const EnergyReport& report);
nlohmann::json trial_report_to_json(const TrialReport& report);
nlohmann::json sweep_report_to_json(const SweepReport& report);

// --- CSV -------------------------------------------------------------------

// 15-significant-digit formatting; defines the equality granularity for
// all byte-identity claims.
std::string format_g15(double value);

// Header: users,scenario,mean_energy_j,std_energy_j,ci95_j,trials,rejected.
std::string sweep_csv(const SweepReport& report);
void write_sweep_csv(const SweepReport& report, const std::string& path);

// Header: user_id,link_type,peer_id,distance_m,path_loss_db,shadowing_db,
// fading_gain,rate_bps. Peer is -1 for the macro BTS, the cell id for
// PH-Links, and the transmitting user id for D-Links.
std::string link_budget_csv(const ChannelSnapshot& snapshot);
void write_link_budget_csv(const ChannelSnapshot& snapshot, const std::string& path);

// --- run manifest ----------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes);

struct ManifestOutput {
    std::string name;       // file name, not path
    std::uint64_t checksum; // FNV-1a 64 of the file bytes
};

// Deterministic by construction: no wall-clock fields, so a rerun with the
// same config and binary reproduces it byte for byte.
nlohmann::json make_manifest(const SimConfig& cfg, const std::vector<ManifestOutput>& outputs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace supercell
