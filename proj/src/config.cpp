#include "supercell/config.hpp"

#include <algorithm>

#include "supercell/errors.hpp"

namespace supercell {

const char* to_string(DistanceUnit u) {
    return u == DistanceUnit::Kilometers ? "km" : "m";
}

const char* to_string(TieBreakPolicy p) {
    return p == TieBreakPolicy::PreferWider ? "prefer_wider" : "prefer_narrower";
}

DistanceUnit distance_unit_from_string(const std::string& s) {
    if (s == "m") return DistanceUnit::Meters;
    if (s == "km") return DistanceUnit::Kilometers;
    throw ParseError("invalid distance unit '" + s + "' (expected m or km)");
}

TieBreakPolicy tie_break_from_string(const std::string& s) {
    if (s == "prefer_wider") return TieBreakPolicy::PreferWider;
    if (s == "prefer_narrower") return TieBreakPolicy::PreferNarrower;
    throw ParseError("invalid tie_break_policy '" + s +
                     "' (expected prefer_wider or prefer_narrower)");
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw ValidationError(message);
}

}  // namespace

void SimConfig::validate() const {
    require(macro_radius_m > 0, "macro_radius_m must be > 0");
    require(phantom_radius_m > 0, "phantom_radius_m must be > 0");
    require(phantom_count >= 0, "phantom_count must be >= 0");
    require(bandwidth_hz > 0, "bandwidth_hz must be > 0");
    require(service_bits > 0, "service_bits must be > 0");
    require(tx_m_w > 0, "tx_m_w must be > 0");
    require(tx_ph_w > 0, "tx_ph_w must be > 0");
    require(tx_d_w > 0, "tx_d_w must be > 0");
    require(rx_m_w > 0, "rx_m_w must be > 0");
    require(rx_ph_w > 0, "rx_ph_w must be > 0");
    require(rx_d_w > 0, "rx_d_w must be > 0");
    require(shadowing_db >= 0, "shadowing_db must be >= 0");
    require(min_distance_m > 0, "min_distance_m must be > 0");
    require(rate_floor_bps > 0, "rate_floor_bps must be > 0");
    require(placement_retry_budget > 0, "placement_retry_budget must be > 0");
    require(macro_only_users >= 0, "macro_only_users must be >= 0");
    require(total_users >= 0, "total_users must be >= 0");
    require(trials >= 1, "trials must be >= 1");
    require(workers >= 0, "workers must be >= 0");

    if (phantom_count > 0) {
        require(phantom_radius_m <= macro_radius_m,
                "phantom_radius_m must not exceed macro_radius_m");
    }
    if (total_users > 0) {
        require(phantom_count > 0, "total_users > 0 requires phantom_count > 0");
    }

    require(!sweep_users.empty(), "sweep_users must be non-empty");
    for (std::size_t i = 0; i < sweep_users.size(); ++i) {
        require(sweep_users[i] > 0, "sweep_users entries must be > 0");
        if (i > 0) {
            require(sweep_users[i] > sweep_users[i - 1],
                    "sweep_users must be strictly increasing");
        }
    }
}

}  // namespace supercell
