#include "supercell/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "supercell/errors.hpp"

namespace supercell {

const BaseStation* Topology::phantom_by_id(int cell_id) const {
    for (const auto& bts : phantom_bts) {
        if (bts.id == cell_id) return &bts;
    }
    return nullptr;
}

std::vector<std::vector<int>> Topology::users_by_cell() const {
    std::vector<std::vector<int>> groups(phantom_bts.size());
    std::map<int, std::size_t> slot;
    for (std::size_t i = 0; i < phantom_bts.size(); ++i) slot[phantom_bts[i].id] = i;
    for (const auto& u : users) {
        if (!u.home_cell) continue;
        auto it = slot.find(*u.home_cell);
        if (it == slot.end()) throw ValidationError("user references unknown phantom cell");
        groups[it->second].push_back(u.id);
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    return groups;
}

void Topology::validate(const SimConfig& cfg) const {
    if (macro_bts.tier != Tier::Macro) throw ValidationError("macro_bts must have Macro tier");
    for (const auto& bts : phantom_bts) {
        if (bts.tier != Tier::Phantom) throw ValidationError("phantom_bts entries must have Phantom tier");
        if (bts.tx_power_w <= 0 || bts.radius_m <= 0)
            throw ValidationError("base station powers and radii must be > 0");
        if (distance(bts.position, macro_bts.position) > macro_bts.radius_m)
            throw ValidationError("phantom BTS outside the macro radius");
    }
    if (!cfg.allow_phantom_overlap) {
        for (std::size_t i = 0; i < phantom_bts.size(); ++i) {
            for (std::size_t j = i + 1; j < phantom_bts.size(); ++j) {
                if (distance(phantom_bts[i].position, phantom_bts[j].position) <
                    2.0 * cfg.phantom_radius_m) {
                    throw ValidationError("phantom disks overlap");
                }
            }
        }
    }
    for (const auto& u : users) {
        if (!std::isfinite(u.position.x) || !std::isfinite(u.position.y))
            throw ValidationError("user position must be finite");
        if (u.home_cell) {
            const BaseStation* home = phantom_by_id(*u.home_cell);
            if (!home) throw ValidationError("user home_cell references unknown phantom cell");
            if (distance(u.position, home->position) > home->radius_m)
                throw ValidationError("user lies outside its home phantom disk");
        }
    }
}

std::vector<int> split_users_per_cell(int total, int cells) {
    std::vector<int> counts(static_cast<std::size_t>(std::max(cells, 0)), 0);
    if (cells <= 0) return counts;
    const int base = total / cells;
    const int remainder = total % cells;
    for (int i = 0; i < cells; ++i) counts[i] = base + (i < remainder ? 1 : 0);
    return counts;
}

namespace {

Point2D uniform_in_disk(Rng& rng, const Point2D& center, double radius) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * M_PI * rng.uniform();
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

}  // namespace

Topology generate_topology(const SimConfig& cfg, Rng& rng) {
    cfg.validate();

    Topology topo;
    topo.macro_bts = {0, Tier::Macro, {0.0, 0.0}, cfg.tx_m_w, cfg.macro_radius_m};

    int budget = cfg.placement_retry_budget;
    const double placement_radius = cfg.macro_radius_m - cfg.phantom_radius_m;

    // Phantom centers: rejection sampling against already-placed disks.
    for (int i = 0; i < cfg.phantom_count; ++i) {
        for (;;) {
            const Point2D center = uniform_in_disk(rng, {0.0, 0.0}, placement_radius);
            bool overlaps = false;
            if (!cfg.allow_phantom_overlap) {
                for (const auto& placed : topo.phantom_bts) {
                    if (distance(center, placed.position) < 2.0 * cfg.phantom_radius_m) {
                        overlaps = true;
                        break;
                    }
                }
            }
            if (!overlaps) {
                topo.phantom_bts.push_back(
                    {i, Tier::Phantom, center, cfg.tx_ph_w, cfg.phantom_radius_m});
                break;
            }
            if (--budget <= 0) {
                throw PlacementExhausted(
                    "could not place " + std::to_string(cfg.phantom_count) +
                    " non-overlapping phantom disks of radius " +
                    std::to_string(cfg.phantom_radius_m) + " m within the macro disk");
            }
        }
    }

    // In-cell users, split evenly with the remainder on the lowest cell ids.
    const std::vector<int> per_cell = split_users_per_cell(cfg.total_users, cfg.phantom_count);
    int next_id = 0;
    for (int cell = 0; cell < cfg.phantom_count; ++cell) {
        const Point2D center = topo.phantom_bts[static_cast<std::size_t>(cell)].position;
        for (int k = 0; k < per_cell[static_cast<std::size_t>(cell)]; ++k) {
            topo.users.push_back(
                {next_id++, uniform_in_disk(rng, center, cfg.phantom_radius_m), cell});
        }
    }

    // Macro-only users: uniform in the macro disk, outside every phantom disk.
    for (int k = 0; k < cfg.macro_only_users; ++k) {
        for (;;) {
            const Point2D pos = uniform_in_disk(rng, {0.0, 0.0}, cfg.macro_radius_m);
            bool inside_phantom = false;
            for (const auto& bts : topo.phantom_bts) {
                if (distance(pos, bts.position) <= bts.radius_m) {
                    inside_phantom = true;
                    break;
                }
            }
            if (!inside_phantom) {
                topo.users.push_back({next_id++, pos, std::nullopt});
                break;
            }
            if (--budget <= 0) {
                throw PlacementExhausted("could not place macro-only users outside the phantom disks");
            }
        }
    }

    return topo;
}

}  // namespace supercell
