#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "supercell/config.hpp"
#include "supercell/rng.hpp"
#include "supercell/topology.hpp"

namespace supercell {

enum class LinkType { MLink, PhLink, DLink };

const char* to_string(LinkType t);
LinkType link_type_from_string(const std::string& s);

// One evaluated link for one snapshot: the full chain from geometry to
// achievable rate. All fields are stored so the chain can be re-audited.
struct LinkBudget {
    LinkType link_type = LinkType::MLink;
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    double shadowing_db = 0.0;   // lognormal draw, in dB
    double fading_gain = 1.0;    // |h|^2, exponential with unit mean
    double rx_power_dbm = 0.0;
    double snr = 0.0;            // linear ratio
    double rate_bps = 0.0;
    bool in_outage = false;      // rate_bps < rate floor
};

// Channel-relevant subset of SimConfig carried inside a snapshot, so the
// snapshot stays self-contained for lazy D-Link evaluation and round-trips
// through JSON.
struct ChannelParams {
    double bandwidth_hz = 10e6;
    double noise_density_dbm_hz = -147.0;
    double rate_floor_bps = 1e3;
    double min_distance_m = 1.0;
    double tx_d_w = 0.125;
    PathLossModel path_loss_d2d{42.0, 16.9, DistanceUnit::Meters};
    double shadowing_sigma_db = 8.0;  // resolved value, 0 when disabled
    bool disable_fading = false;

    static ChannelParams from_config(const SimConfig& cfg);
};

double path_loss_db(LinkType link_type, double distance_m, const SimConfig& cfg);

double noise_power_dbm(double bandwidth_hz, double noise_density_dbm_hz = -147.0);

// Zero-mean Gaussian in dB. Exactly 0 when the resolved sigma is 0.
double draw_shadowing_db(Rng& rng, double sigma_db);

// Exponential power gain with unit mean. Exactly 1 when disabled.
double draw_fading_gain(Rng& rng, bool disabled);

// rx_dbm = 10 log10(1000 tx_w) - PL + shadowing + 10 log10(fading);
// rate = B log2(1 + 10^((rx_dbm - noise_dbm)/10)).
double achievable_rate_bps(double tx_power_w, double path_loss_db, double shadowing_db,
                           double fading_gain, double bandwidth_hz,
                           double noise_density_dbm_hz);

// Distance is clamped at params.min_distance_m; shadowing is drawn first,
// then fading.
LinkBudget make_link_budget(LinkType link_type, const PathLossModel& model, double tx_power_w,
                            double distance_m, Rng& rng, const ChannelParams& params);

// One Monte Carlo channel draw for a topology: a macro budget for every
// user, phantom budgets for every user's candidate cells, and lazily
// evaluated D-Link budgets between co-cell user pairs. Draws are keyed by
// (link type, endpoints) off a base seed, so the lazy cache is independent
// of evaluation order and of eager materialization.
class ChannelSnapshot {
public:
    ChannelSnapshot(std::vector<UserTerminal> users, ChannelParams params);
    ChannelSnapshot(std::vector<UserTerminal> users, ChannelParams params,
                    std::uint64_t base_seed);

    ChannelSnapshot(const ChannelSnapshot& other);
    ChannelSnapshot& operator=(const ChannelSnapshot& other);
    ChannelSnapshot(ChannelSnapshot&&) noexcept = default;
    ChannelSnapshot& operator=(ChannelSnapshot&&) noexcept = default;

    const std::vector<UserTerminal>& users() const { return users_; }
    const UserTerminal& user(int user_id) const;
    const ChannelParams& params() const { return params_; }

    void set_macro_budget(int user_id, LinkBudget budget);
    void set_phantom_budget(int user_id, int cell_id, LinkBudget budget);
    void set_dlink_budget(int user_a, int user_b, LinkBudget budget);

    const LinkBudget& macro_budget(int user_id) const;
    // nullptr when the snapshot holds no budget for (user, cell).
    const LinkBudget* phantom_budget(int user_id, int cell_id) const;
    // The budget for the user's home cell; throws SimError if absent.
    const LinkBudget& home_phantom_budget(int user_id) const;
    // Lazily evaluated for co-cell pairs; throws SimError for non-co-cell
    // pairs or when the snapshot cannot derive new draws (JSON-loaded).
    const LinkBudget& dlink_budget(int user_a, int user_b) const;

    // Candidate phantom budgets of one user, ordered by cell id.
    const std::map<int, LinkBudget>& phantom_budgets(int user_id) const;

    // Evaluates every co-cell D-Link pair (for dumps and serialization).
    void materialize_dlinks() const;
    // Materialized D-Link entries, sorted by (user_a, user_b).
    std::vector<std::pair<std::pair<int, int>, LinkBudget>> dlink_entries() const;

private:
    int index_of(int user_id) const;

    std::vector<UserTerminal> users_;
    std::unordered_map<int, int> index_by_id_;
    ChannelParams params_;
    std::uint64_t base_seed_ = 0;
    bool can_derive_ = false;  // false for snapshots rebuilt from serialized budgets

    std::vector<LinkBudget> macro_;
    std::vector<bool> has_macro_;
    std::vector<std::map<int, LinkBudget>> phantom_;

    mutable std::map<std::pair<int, int>, LinkBudget> dlink_;
    mutable std::unique_ptr<std::mutex> dlink_mutex_;
};

ChannelSnapshot build_snapshot(const Topology& topology, const SimConfig& cfg, Rng& rng);

}  // namespace supercell
