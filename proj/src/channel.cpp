#include "supercell/channel.hpp"

#include <algorithm>
#include <cmath>

#include "supercell/errors.hpp"
#include "supercell/geometry.hpp"

namespace supercell {

const char* to_string(LinkType t) {
    switch (t) {
        case LinkType::MLink: return "m";
        case LinkType::PhLink: return "ph";
        case LinkType::DLink: return "d";
    }
    return "?";
}

LinkType link_type_from_string(const std::string& s) {
    if (s == "m") return LinkType::MLink;
    if (s == "ph") return LinkType::PhLink;
    if (s == "d") return LinkType::DLink;
    throw ParseError("invalid link type '" + s + "'");
}

ChannelParams ChannelParams::from_config(const SimConfig& cfg) {
    ChannelParams p;
    p.bandwidth_hz = cfg.bandwidth_hz;
    p.noise_density_dbm_hz = cfg.noise_density_dbm_hz;
    p.rate_floor_bps = cfg.rate_floor_bps;
    p.min_distance_m = cfg.min_distance_m;
    p.tx_d_w = cfg.tx_d_w;
    p.path_loss_d2d = cfg.path_loss_d2d;
    p.shadowing_sigma_db = cfg.shadowing_sigma_db();
    p.disable_fading = cfg.disable_fading;
    return p;
}

double path_loss_db(LinkType link_type, double distance_m, const SimConfig& cfg) {
    switch (link_type) {
        case LinkType::MLink: return cfg.path_loss_macro.at(distance_m);
        case LinkType::PhLink: return cfg.path_loss_phantom.at(distance_m);
        case LinkType::DLink: return cfg.path_loss_d2d.at(distance_m);
    }
    return 0.0;
}

double noise_power_dbm(double bandwidth_hz, double noise_density_dbm_hz) {
    return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

double draw_shadowing_db(Rng& rng, double sigma_db) {
    if (sigma_db <= 0.0) return 0.0;
    return rng.normal(0.0, sigma_db);
}

double draw_fading_gain(Rng& rng, bool disabled) {
    if (disabled) return 1.0;
    return rng.exponential(1.0);
}

double achievable_rate_bps(double tx_power_w, double path_loss_db, double shadowing_db,
                           double fading_gain, double bandwidth_hz,
                           double noise_density_dbm_hz) {
    const double tx_dbm = 10.0 * std::log10(tx_power_w * 1000.0);
    const double rx_dbm = tx_dbm - path_loss_db + shadowing_db + 10.0 * std::log10(fading_gain);
    const double snr = std::pow(10.0, (rx_dbm - noise_power_dbm(bandwidth_hz, noise_density_dbm_hz)) / 10.0);
    return bandwidth_hz * std::log2(1.0 + snr);
}

LinkBudget make_link_budget(LinkType link_type, const PathLossModel& model, double tx_power_w,
                            double distance_m, Rng& rng, const ChannelParams& params) {
    LinkBudget b;
    b.link_type = link_type;
    b.distance_m = std::max(distance_m, params.min_distance_m);
    b.path_loss_db = model.at(b.distance_m);
    b.shadowing_db = draw_shadowing_db(rng, params.shadowing_sigma_db);
    b.fading_gain = draw_fading_gain(rng, params.disable_fading);

    const double tx_dbm = 10.0 * std::log10(tx_power_w * 1000.0);
    b.rx_power_dbm = tx_dbm - b.path_loss_db + b.shadowing_db + 10.0 * std::log10(b.fading_gain);
    const double noise_dbm = noise_power_dbm(params.bandwidth_hz, params.noise_density_dbm_hz);
    b.snr = std::pow(10.0, (b.rx_power_dbm - noise_dbm) / 10.0);
    b.rate_bps = params.bandwidth_hz * std::log2(1.0 + b.snr);
    b.in_outage = b.rate_bps < params.rate_floor_bps;
    return b;
}

namespace {

// Keys per-link RNG streams off the snapshot base seed so draws do not
// depend on evaluation order.
std::uint64_t link_key(LinkType type, int a, int b) {
    const auto t = static_cast<std::uint64_t>(type) + 1;
    return (t << 60) ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 30) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

}  // namespace

ChannelSnapshot::ChannelSnapshot(std::vector<UserTerminal> users, ChannelParams params)
    : users_(std::move(users)),
      params_(params),
      dlink_mutex_(std::make_unique<std::mutex>()) {
    for (std::size_t i = 0; i < users_.size(); ++i) index_by_id_[users_[i].id] = static_cast<int>(i);
    macro_.resize(users_.size());
    has_macro_.assign(users_.size(), false);
    phantom_.resize(users_.size());
}

ChannelSnapshot::ChannelSnapshot(std::vector<UserTerminal> users, ChannelParams params,
                                 std::uint64_t base_seed)
    : ChannelSnapshot(std::move(users), params) {
    base_seed_ = base_seed;
    can_derive_ = true;
}

ChannelSnapshot::ChannelSnapshot(const ChannelSnapshot& other)
    : users_(other.users_),
      index_by_id_(other.index_by_id_),
      params_(other.params_),
      base_seed_(other.base_seed_),
      can_derive_(other.can_derive_),
      macro_(other.macro_),
      has_macro_(other.has_macro_),
      phantom_(other.phantom_),
      dlink_mutex_(std::make_unique<std::mutex>()) {
    std::lock_guard<std::mutex> lock(*other.dlink_mutex_);
    dlink_ = other.dlink_;
}

ChannelSnapshot& ChannelSnapshot::operator=(const ChannelSnapshot& other) {
    if (this == &other) return *this;
    ChannelSnapshot copy(other);
    *this = std::move(copy);
    return *this;
}

int ChannelSnapshot::index_of(int user_id) const {
    auto it = index_by_id_.find(user_id);
    if (it == index_by_id_.end())
        throw SimError("snapshot has no user with id " + std::to_string(user_id));
    return it->second;
}

const UserTerminal& ChannelSnapshot::user(int user_id) const {
    return users_[static_cast<std::size_t>(index_of(user_id))];
}

void ChannelSnapshot::set_macro_budget(int user_id, LinkBudget budget) {
    const auto i = static_cast<std::size_t>(index_of(user_id));
    macro_[i] = budget;
    has_macro_[i] = true;
}

void ChannelSnapshot::set_phantom_budget(int user_id, int cell_id, LinkBudget budget) {
    phantom_[static_cast<std::size_t>(index_of(user_id))][cell_id] = budget;
}

void ChannelSnapshot::set_dlink_budget(int user_a, int user_b, LinkBudget budget) {
    const auto key = std::minmax(user_a, user_b);
    std::lock_guard<std::mutex> lock(*dlink_mutex_);
    dlink_[{key.first, key.second}] = budget;
}

const LinkBudget& ChannelSnapshot::macro_budget(int user_id) const {
    const auto i = static_cast<std::size_t>(index_of(user_id));
    if (!has_macro_[i])
        throw SimError("snapshot has no macro budget for user " + std::to_string(user_id));
    return macro_[i];
}

const LinkBudget* ChannelSnapshot::phantom_budget(int user_id, int cell_id) const {
    const auto& budgets = phantom_[static_cast<std::size_t>(index_of(user_id))];
    auto it = budgets.find(cell_id);
    return it == budgets.end() ? nullptr : &it->second;
}

const LinkBudget& ChannelSnapshot::home_phantom_budget(int user_id) const {
    const UserTerminal& u = user(user_id);
    if (!u.home_cell)
        throw SimError("user " + std::to_string(user_id) + " has no home phantom cell");
    const LinkBudget* b = phantom_budget(user_id, *u.home_cell);
    if (!b)
        throw SimError("snapshot has no home phantom budget for user " + std::to_string(user_id));
    return *b;
}

const std::map<int, LinkBudget>& ChannelSnapshot::phantom_budgets(int user_id) const {
    return phantom_[static_cast<std::size_t>(index_of(user_id))];
}

const LinkBudget& ChannelSnapshot::dlink_budget(int user_a, int user_b) const {
    const UserTerminal& a = user(user_a);
    const UserTerminal& b = user(user_b);
    if (!a.home_cell || !b.home_cell || *a.home_cell != *b.home_cell) {
        throw SimError("D-Link budgets exist only between co-cell users (" +
                       std::to_string(user_a) + ", " + std::to_string(user_b) + ")");
    }
    const auto ordered = std::minmax(user_a, user_b);
    const std::pair<int, int> key{ordered.first, ordered.second};

    std::lock_guard<std::mutex> lock(*dlink_mutex_);
    auto it = dlink_.find(key);
    if (it != dlink_.end()) return it->second;
    if (!can_derive_) {
        throw SimError("snapshot cannot derive the D-Link budget for pair (" +
                       std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
    }
    Rng rng(derive_seed(base_seed_, link_key(LinkType::DLink, key.first, key.second)));
    const double d = link_distance(a.position, b.position, params_.min_distance_m);
    LinkBudget budget =
        make_link_budget(LinkType::DLink, params_.path_loss_d2d, params_.tx_d_w, d, rng, params_);
    return dlink_.emplace(key, budget).first->second;
}

void ChannelSnapshot::materialize_dlinks() const {
    std::map<int, std::vector<int>> cells;
    for (const auto& u : users_) {
        if (u.home_cell) cells[*u.home_cell].push_back(u.id);
    }
    for (auto& [cell, ids] : cells) {
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                dlink_budget(ids[i], ids[j]);
            }
        }
    }
}

std::vector<std::pair<std::pair<int, int>, LinkBudget>> ChannelSnapshot::dlink_entries() const {
    std::lock_guard<std::mutex> lock(*dlink_mutex_);
    return {dlink_.begin(), dlink_.end()};
}

ChannelSnapshot build_snapshot(const Topology& topology, const SimConfig& cfg, Rng& rng) {
    const std::uint64_t base = rng.next_u64();
    ChannelSnapshot snap(topology.users, ChannelParams::from_config(cfg), base);
    const ChannelParams& params = snap.params();

    for (const auto& u : topology.users) {
        // Macro budget for every user.
        {
            Rng link_rng(derive_seed(base, link_key(LinkType::MLink, u.id, 0)));
            const double d =
                link_distance(u.position, topology.macro_bts.position, cfg.min_distance_m);
            snap.set_macro_budget(u.id, make_link_budget(LinkType::MLink, cfg.path_loss_macro,
                                                         topology.macro_bts.tx_power_w, d,
                                                         link_rng, params));
        }
        // Phantom budgets: home cell only, or every cell when the planner
        // is configured to widen the candidate set.
        for (const auto& bts : topology.phantom_bts) {
            const bool candidate = cfg.candidate_all_phantoms ||
                                   (u.home_cell && *u.home_cell == bts.id);
            if (!candidate) continue;
            Rng link_rng(derive_seed(base, link_key(LinkType::PhLink, u.id, bts.id)));
            const double d = link_distance(u.position, bts.position, cfg.min_distance_m);
            snap.set_phantom_budget(u.id, bts.id,
                                    make_link_budget(LinkType::PhLink, cfg.path_loss_phantom,
                                                     bts.tx_power_w, d, link_rng, params));
        }
    }
    return snap;
}

}  // namespace supercell
