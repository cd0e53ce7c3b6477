#include "supercell/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "supercell/errors.hpp"

namespace supercell {

PowerProfile PowerProfile::from_config(const SimConfig& cfg) {
    return {cfg.tx_m_w, cfg.tx_ph_w, cfg.tx_d_w,
            cfg.rx_m_w, cfg.rx_ph_w, cfg.rx_d_w, cfg.service_bits};
}

double PowerProfile::tx_for(LinkType t) const {
    switch (t) {
        case LinkType::MLink: return tx_m;
        case LinkType::PhLink: return tx_ph;
        case LinkType::DLink: return tx_d;
    }
    return 0.0;
}

double PowerProfile::rx_for(LinkType t) const {
    switch (t) {
        case LinkType::MLink: return rx_m;
        case LinkType::PhLink: return rx_ph;
        case LinkType::DLink: return rx_d;
    }
    return 0.0;
}

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Macro: return "macro";
        case Scenario::Phantom: return "phantom";
        case Scenario::SuperCell: return "supercell";
        case Scenario::Hybrid: return "hybrid";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "macro") return Scenario::Macro;
    if (s == "phantom") return Scenario::Phantom;
    if (s == "supercell") return Scenario::SuperCell;
    if (s == "hybrid") return Scenario::Hybrid;
    throw ParseError("invalid scenario '" + s + "'");
}

double per_user_cost(LinkType link_type, double rate_bps, const PowerProfile& profile,
                     double rate_floor_bps) {
    if (rate_bps < rate_floor_bps) {
        throw OutageError("rate " + std::to_string(rate_bps) + " bit/s is below the floor of " +
                          std::to_string(rate_floor_bps) + " bit/s");
    }
    return profile.service_bits * (profile.tx_for(link_type) + profile.rx_for(link_type)) /
           rate_bps;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void throw_outage(Scenario scenario, int count) {
    throw OutageInScenario(std::string(to_string(scenario)) + ": " + std::to_string(count) +
                           " serving link(s) below the rate floor");
}

}  // namespace

EnergyReport energy_situation1(const ChannelSnapshot& snapshot, const PowerProfile& profile) {
    EnergyReport report;
    report.scenario = Scenario::Macro;
    const auto& users = snapshot.users();
    if (users.empty()) return report;

    int outage = 0;
    double min_rate = kInf;
    for (const auto& u : users) {
        const LinkBudget& b = snapshot.macro_budget(u.id);
        if (b.in_outage) ++outage;
        min_rate = std::min(min_rate, b.rate_bps);
    }
    if (outage > 0) throw_outage(Scenario::Macro, outage);

    report.tx_macro_j = profile.service_bits * profile.tx_m / min_rate;
    for (const auto& u : users) {
        report.rx_total_j += profile.service_bits * profile.rx_m / snapshot.macro_budget(u.id).rate_bps;
    }
    report.total_j = report.tx_macro_j + report.tx_phantom_j + report.tx_d2d_j + report.rx_total_j;
    return report;
}

EnergyReport energy_situation2(const ChannelSnapshot& snapshot, const Topology& topology,
                               const PowerProfile& profile) {
    EnergyReport report;
    report.scenario = Scenario::Phantom;

    for (const auto& u : snapshot.users()) {
        if (!u.home_cell) {
            throw OutageInScenario("phantom: user " + std::to_string(u.id) +
                                   " lies outside every phantom cell and has no PH-Link");
        }
    }

    const auto groups = topology.users_by_cell();
    for (std::size_t i = 0; i < topology.phantom_bts.size(); ++i) {
        const int cell_id = topology.phantom_bts[i].id;
        const auto& members = groups[i];
        if (members.empty()) continue;  // empty cells contribute zero

        int outage = 0;
        double min_rate = kInf;
        double cell_rx = 0.0;
        for (int uid : members) {
            const LinkBudget* b = snapshot.phantom_budget(uid, cell_id);
            if (!b)
                throw SimError("snapshot has no PH-Link budget for user " + std::to_string(uid) +
                               " in cell " + std::to_string(cell_id));
            if (b->in_outage) ++outage;
            min_rate = std::min(min_rate, b->rate_bps);
            cell_rx += profile.service_bits * profile.rx_ph / b->rate_bps;
        }
        if (outage > 0) throw_outage(Scenario::Phantom, outage);

        const double cell_tx = profile.service_bits * profile.tx_ph / min_rate;
        report.tx_phantom_j += cell_tx;
        report.rx_total_j += cell_rx;
        report.per_cell.push_back({cell_id, cell_tx + cell_rx});
    }
    report.total_j = report.tx_macro_j + report.tx_phantom_j + report.tx_d2d_j + report.rx_total_j;
    return report;
}

CellEq3Terms eval_cell_eq3(int cell_id, const std::vector<int>& direct_users,
                           const std::vector<Cluster>& clusters, const ChannelSnapshot& snapshot,
                           const PowerProfile& profile, bool strict_eq3_min,
                           OutagePolicy outage_policy) {
    CellEq3Terms terms;
    if (direct_users.empty() && clusters.empty()) return terms;

    int outage = 0;
    const auto ph_budget = [&](int uid) -> const LinkBudget& {
        const LinkBudget* b = snapshot.phantom_budget(uid, cell_id);
        if (!b)
            throw MalformedPlan("no PH-Link budget for user " + std::to_string(uid) +
                                " in cell " + std::to_string(cell_id));
        return *b;
    };

    // First term: the phantom BTS broadcast, paced by the worst rate among
    // the users it actually serves (heads + directs), or among all of the
    // cell's users under the strict reading.
    double ph_min = kInf;
    const auto fold_ph = [&](int uid) {
        const LinkBudget& b = ph_budget(uid);
        if (b.in_outage) ++outage;
        ph_min = std::min(ph_min, b.rate_bps);
    };
    for (int uid : direct_users) fold_ph(uid);
    for (const auto& c : clusters) {
        fold_ph(c.head);
        if (strict_eq3_min) {
            for (int m : c.members) fold_ph(m);
        }
    }

    // Second term: one D2D multicast per cluster, paced by its worst member.
    double tx_d2d = 0.0;
    double rx = 0.0;
    for (const auto& c : clusters) {
        double d_min = kInf;
        for (int m : c.members) {
            const LinkBudget& b = snapshot.dlink_budget(c.head, m);
            if (b.in_outage) ++outage;
            d_min = std::min(d_min, b.rate_bps);
            rx += profile.service_bits * profile.rx_d / b.rate_bps;
        }
        tx_d2d += profile.service_bits * profile.tx_d / d_min;
        rx += profile.service_bits * profile.rx_ph / ph_budget(c.head).rate_bps;
    }
    for (int uid : direct_users) {
        rx += profile.service_bits * profile.rx_ph / ph_budget(uid).rate_bps;
    }

    if (outage > 0) {
        if (outage_policy == OutagePolicy::Throw) throw_outage(Scenario::SuperCell, outage);
        return {kInf, 0.0, 0.0};
    }

    terms.tx_phantom_j = profile.service_bits * profile.tx_ph / ph_min;
    terms.tx_d2d_j = tx_d2d;
    terms.rx_j = rx;
    return terms;
}

namespace {

// Shared core of the hybrid and pure-Eq.-3 evaluators.
EnergyReport eval_plan(const ChannelSnapshot& snapshot, const ServingPlan& plan,
                       const PowerProfile& profile, bool strict_eq3_min, Scenario scenario) {
    // Coverage: every snapshot user exactly once.
    std::map<int, int> counts;
    for (int u : plan.macro_users) ++counts[u];
    for (const auto& [cell, u] : plan.direct_phantom_users) ++counts[u];
    for (const auto& c : plan.clusters) {
        ++counts[c.head];
        for (int m : c.members) ++counts[m];
    }
    for (const auto& u : snapshot.users()) {
        auto it = counts.find(u.id);
        if (it == counts.end())
            throw MalformedPlan("user " + std::to_string(u.id) + " is not covered by the plan");
        if (it->second != 1)
            throw MalformedPlan("user " + std::to_string(u.id) + " is covered " +
                                std::to_string(it->second) + " times");
    }
    if (counts.size() != snapshot.users().size())
        throw MalformedPlan("plan references users absent from the snapshot");

    EnergyReport report;
    report.scenario = scenario;

    // Macro term over macro-served users (zero when none).
    if (!plan.macro_users.empty()) {
        int outage = 0;
        double min_rate = kInf;
        for (int uid : plan.macro_users) {
            const LinkBudget& b = snapshot.macro_budget(uid);
            if (b.in_outage) ++outage;
            min_rate = std::min(min_rate, b.rate_bps);
            report.rx_total_j += profile.service_bits * profile.rx_m / b.rate_bps;
        }
        if (outage > 0) throw_outage(scenario, outage);
        report.tx_macro_j = profile.service_bits * profile.tx_m / min_rate;
    }

    // Phantom and D2D terms per cell, in cell-id order.
    std::map<int, std::vector<int>> directs_by_cell;
    std::map<int, std::vector<Cluster>> clusters_by_cell;
    for (const auto& [cell, u] : plan.direct_phantom_users) directs_by_cell[cell].push_back(u);
    for (const auto& c : plan.clusters) clusters_by_cell[c.cell_id].push_back(c);

    std::map<int, CellEq3Terms> cells;
    for (const auto& [cell, directs] : directs_by_cell) cells[cell];
    for (const auto& [cell, cs] : clusters_by_cell) cells[cell];
    static const std::vector<int> no_directs;
    static const std::vector<Cluster> no_clusters;
    for (auto& [cell, terms] : cells) {
        const auto di = directs_by_cell.find(cell);
        const auto ci = clusters_by_cell.find(cell);
        terms = eval_cell_eq3(cell, di == directs_by_cell.end() ? no_directs : di->second,
                              ci == clusters_by_cell.end() ? no_clusters : ci->second, snapshot,
                              profile, strict_eq3_min, OutagePolicy::Throw);
        report.tx_phantom_j += terms.tx_phantom_j;
        report.tx_d2d_j += terms.tx_d2d_j;
        report.rx_total_j += terms.rx_j;
        report.per_cell.push_back({cell, terms.total()});
    }

    report.total_j = report.tx_macro_j + report.tx_phantom_j + report.tx_d2d_j + report.rx_total_j;
    return report;
}

}  // namespace

EnergyReport energy_situation3(const ChannelSnapshot& snapshot, const ServingPlan& plan,
                               const PowerProfile& profile, bool strict_eq3_min) {
    if (!plan.macro_users.empty()) {
        throw MalformedPlan("situation 3 serves every user from within a phantom cell; the plan "
                            "assigns " + std::to_string(plan.macro_users.size()) +
                            " user(s) to the macro BTS");
    }
    return eval_plan(snapshot, plan, profile, strict_eq3_min, Scenario::SuperCell);
}

EnergyReport energy_hybrid(const ChannelSnapshot& snapshot, const ServingPlan& plan,
                           const PowerProfile& profile, bool strict_eq3_min) {
    return eval_plan(snapshot, plan, profile, strict_eq3_min, Scenario::Hybrid);
}

}  // namespace supercell
