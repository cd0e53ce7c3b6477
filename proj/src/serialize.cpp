#include "supercell/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "supercell/errors.hpp"

namespace supercell {

using nlohmann::json;

// --- small helpers -----------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write to " + path + " failed");
}

std::string format_g15(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// --- config file -------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("key " + key + ": expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw ParseError("");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError("key " + key + ": expected an integer, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("key " + key + ": expected an unsigned integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ParseError("key " + key + ": expected true or false, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ParseError("key " + key + ": empty list entry");
        out.push_back(parse_int(key, item));
    }
    if (out.empty()) throw ParseError("key " + key + ": expected a comma-separated list");
    return out;
}

struct KeyHandler {
    std::function<void(SimConfig&, const std::string&, const std::string&)> set;
    std::function<json(const SimConfig&)> get;
};

using Table = std::map<std::string, KeyHandler>;

KeyHandler double_key(double SimConfig::*field) {
    return {[field](SimConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_double(k, v);
            },
            [field](const SimConfig& c) { return json(c.*field); }};
}

KeyHandler int_key(int SimConfig::*field) {
    return {[field](SimConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_int(k, v);
            },
            [field](const SimConfig& c) { return json(c.*field); }};
}

KeyHandler bool_key(bool SimConfig::*field) {
    return {[field](SimConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_bool(k, v);
            },
            [field](const SimConfig& c) { return json(c.*field); }};
}

KeyHandler unit_key(PathLossModel SimConfig::*model) {
    return {[model](SimConfig& c, const std::string&, const std::string& v) {
                (c.*model).unit = distance_unit_from_string(v);
            },
            [model](const SimConfig& c) { return json(to_string((c.*model).unit)); }};
}

KeyHandler model_double_key(PathLossModel SimConfig::*model, double PathLossModel::*field) {
    return {[model, field](SimConfig& c, const std::string& k, const std::string& v) {
                (c.*model).*field = parse_double(k, v);
            },
            [model, field](const SimConfig& c) { return json((c.*model).*field); }};
}

const Table& key_table() {
    static const Table table = [] {
        Table t;
        t["macro_radius_m"] = double_key(&SimConfig::macro_radius_m);
        t["phantom_radius_m"] = double_key(&SimConfig::phantom_radius_m);
        t["phantom_count"] = int_key(&SimConfig::phantom_count);
        t["bandwidth_hz"] = double_key(&SimConfig::bandwidth_hz);
        t["service_bits"] = double_key(&SimConfig::service_bits);
        t["tx_m_w"] = double_key(&SimConfig::tx_m_w);
        t["tx_ph_w"] = double_key(&SimConfig::tx_ph_w);
        t["tx_d_w"] = double_key(&SimConfig::tx_d_w);
        t["rx_m_w"] = double_key(&SimConfig::rx_m_w);
        t["rx_ph_w"] = double_key(&SimConfig::rx_ph_w);
        t["rx_d_w"] = double_key(&SimConfig::rx_d_w);
        t["noise_density_dbm_hz"] = double_key(&SimConfig::noise_density_dbm_hz);
        t["shadowing_db"] = double_key(&SimConfig::shadowing_db);
        t["shadowing_is_variance"] = bool_key(&SimConfig::shadowing_is_variance);
        t["path_loss_macro_fixed_db"] = model_double_key(&SimConfig::path_loss_macro, &PathLossModel::fixed_db);
        t["path_loss_macro_slope_db"] = model_double_key(&SimConfig::path_loss_macro, &PathLossModel::slope_db);
        t["path_loss_macro_unit"] = unit_key(&SimConfig::path_loss_macro);
        t["path_loss_phantom_fixed_db"] = model_double_key(&SimConfig::path_loss_phantom, &PathLossModel::fixed_db);
        t["path_loss_phantom_slope_db"] = model_double_key(&SimConfig::path_loss_phantom, &PathLossModel::slope_db);
        t["path_loss_phantom_unit"] = unit_key(&SimConfig::path_loss_phantom);
        t["path_loss_d2d_fixed_db"] = model_double_key(&SimConfig::path_loss_d2d, &PathLossModel::fixed_db);
        t["path_loss_d2d_slope_db"] = model_double_key(&SimConfig::path_loss_d2d, &PathLossModel::slope_db);
        t["path_loss_d2d_unit"] = unit_key(&SimConfig::path_loss_d2d);
        t["min_distance_m"] = double_key(&SimConfig::min_distance_m);
        t["rate_floor_bps"] = double_key(&SimConfig::rate_floor_bps);
        t["disable_shadowing"] = bool_key(&SimConfig::disable_shadowing);
        t["disable_fading"] = bool_key(&SimConfig::disable_fading);
        t["allow_phantom_overlap"] = bool_key(&SimConfig::allow_phantom_overlap);
        t["placement_retry_budget"] = int_key(&SimConfig::placement_retry_budget);
        t["macro_only_users"] = int_key(&SimConfig::macro_only_users);
        t["strict_eq3_min"] = bool_key(&SimConfig::strict_eq3_min);
        t["candidate_all_phantoms"] = bool_key(&SimConfig::candidate_all_phantoms);
        t["tie_break_policy"] = {
            [](SimConfig& c, const std::string&, const std::string& v) {
                c.tie_break_policy = tie_break_from_string(v);
            },
            [](const SimConfig& c) { return json(to_string(c.tie_break_policy)); }};
        t["independent_scenario_draws"] = bool_key(&SimConfig::independent_scenario_draws);
        t["include_pure_eq3"] = bool_key(&SimConfig::include_pure_eq3);
        t["total_users"] = int_key(&SimConfig::total_users);
        t["sweep_users"] = {
            [](SimConfig& c, const std::string& k, const std::string& v) {
                c.sweep_users = parse_int_list(k, v);
            },
            [](const SimConfig& c) { return json(c.sweep_users); }};
        t["trials"] = int_key(&SimConfig::trials);
        t["master_seed"] = {
            [](SimConfig& c, const std::string& k, const std::string& v) {
                c.master_seed = parse_u64(k, v);
            },
            [](const SimConfig& c) { return json(c.master_seed); }};
        t["workers"] = int_key(&SimConfig::workers);
        return t;
    }();
    return table;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing key");
        const auto it = key_table().find(key);
        if (it == key_table().end()) throw UnknownKeyError(key);
        it->second.set(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

json config_to_json(const SimConfig& cfg) {
    json j = json::object();
    for (const auto& [key, handler] : key_table()) {
        if (key == "workers") continue;
        j[key] = handler.get(cfg);
    }
    return j;
}

// --- JSON schemas ------------------------------------------------------------

namespace {

json bts_to_json(const BaseStation& b) {
    return {{"id", b.id},
            {"x", b.position.x},
            {"y", b.position.y},
            {"tx_power_w", b.tx_power_w},
            {"radius_m", b.radius_m}};
}

BaseStation bts_from_json(const json& j, Tier tier) {
    return {j.at("id").get<int>(), tier,
            {j.at("x").get<double>(), j.at("y").get<double>()},
            j.at("tx_power_w").get<double>(), j.at("radius_m").get<double>()};
}

json user_to_json(const UserTerminal& u) {
    json j{{"id", u.id}, {"x", u.position.x}, {"y", u.position.y}};
    if (u.home_cell) {
        j["home_cell"] = *u.home_cell;
    } else {
        j["home_cell"] = nullptr;
    }
    return j;
}

UserTerminal user_from_json(const json& j) {
    UserTerminal u{j.at("id").get<int>(), {j.at("x").get<double>(), j.at("y").get<double>()}, {}};
    if (j.contains("home_cell") && !j.at("home_cell").is_null()) {
        u.home_cell = j.at("home_cell").get<int>();
    }
    return u;
}

json budget_to_json(const LinkBudget& b) {
    return {{"link_type", to_string(b.link_type)},
            {"distance_m", b.distance_m},
            {"path_loss_db", b.path_loss_db},
            {"shadowing_db", b.shadowing_db},
            {"fading_gain", b.fading_gain},
            {"rx_power_dbm", b.rx_power_dbm},
            {"snr", b.snr},
            {"rate_bps", b.rate_bps},
            {"in_outage", b.in_outage}};
}

LinkBudget budget_from_json(const json& j) {
    LinkBudget b;
    b.link_type = link_type_from_string(j.at("link_type").get<std::string>());
    b.distance_m = j.at("distance_m").get<double>();
    b.path_loss_db = j.at("path_loss_db").get<double>();
    b.shadowing_db = j.at("shadowing_db").get<double>();
    b.fading_gain = j.at("fading_gain").get<double>();
    b.rx_power_dbm = j.at("rx_power_dbm").get<double>();
    b.snr = j.at("snr").get<double>();
    b.rate_bps = j.at("rate_bps").get<double>();
    b.in_outage = j.at("in_outage").get<bool>();
    return b;
}

json params_to_json(const ChannelParams& p) {
    return {{"bandwidth_hz", p.bandwidth_hz},
            {"noise_density_dbm_hz", p.noise_density_dbm_hz},
            {"rate_floor_bps", p.rate_floor_bps},
            {"min_distance_m", p.min_distance_m},
            {"tx_d_w", p.tx_d_w},
            {"path_loss_d2d_fixed_db", p.path_loss_d2d.fixed_db},
            {"path_loss_d2d_slope_db", p.path_loss_d2d.slope_db},
            {"path_loss_d2d_unit", to_string(p.path_loss_d2d.unit)},
            {"shadowing_sigma_db", p.shadowing_sigma_db},
            {"disable_fading", p.disable_fading}};
}

ChannelParams params_from_json(const json& j) {
    ChannelParams p;
    p.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    p.noise_density_dbm_hz = j.at("noise_density_dbm_hz").get<double>();
    p.rate_floor_bps = j.at("rate_floor_bps").get<double>();
    p.min_distance_m = j.at("min_distance_m").get<double>();
    p.tx_d_w = j.at("tx_d_w").get<double>();
    p.path_loss_d2d.fixed_db = j.at("path_loss_d2d_fixed_db").get<double>();
    p.path_loss_d2d.slope_db = j.at("path_loss_d2d_slope_db").get<double>();
    p.path_loss_d2d.unit = distance_unit_from_string(j.at("path_loss_d2d_unit").get<std::string>());
    p.shadowing_sigma_db = j.at("shadowing_sigma_db").get<double>();
    p.disable_fading = j.at("disable_fading").get<bool>();
    return p;
}

}  // namespace

json topology_to_json(const Topology& topology) {
    json phantoms = json::array();
    for (const auto& b : topology.phantom_bts) phantoms.push_back(bts_to_json(b));
    json users = json::array();
    for (const auto& u : topology.users) users.push_back(user_to_json(u));
    return {{"macro_bts", bts_to_json(topology.macro_bts)},
            {"phantom_bts", phantoms},
            {"users", users}};
}

Topology topology_from_json(const json& j) {
    Topology t;
    t.macro_bts = bts_from_json(j.at("macro_bts"), Tier::Macro);
    for (const auto& b : j.at("phantom_bts")) t.phantom_bts.push_back(bts_from_json(b, Tier::Phantom));
    for (const auto& u : j.at("users")) t.users.push_back(user_from_json(u));
    return t;
}

json snapshot_to_json(const ChannelSnapshot& snapshot) {
    snapshot.materialize_dlinks();

    json users = json::array();
    json macro = json::array();
    json phantom = json::array();
    for (const auto& u : snapshot.users()) {
        users.push_back(user_to_json(u));
        json m = budget_to_json(snapshot.macro_budget(u.id));
        m["user"] = u.id;
        macro.push_back(m);
        for (const auto& [cell, budget] : snapshot.phantom_budgets(u.id)) {
            json p = budget_to_json(budget);
            p["user"] = u.id;
            p["cell"] = cell;
            phantom.push_back(p);
        }
    }
    json dlink = json::array();
    for (const auto& [pair, budget] : snapshot.dlink_entries()) {
        json d = budget_to_json(budget);
        d["user_a"] = pair.first;
        d["user_b"] = pair.second;
        dlink.push_back(d);
    }
    return {{"params", params_to_json(snapshot.params())},
            {"users", users},
            {"macro_budgets", macro},
            {"phantom_budgets", phantom},
            {"dlink_budgets", dlink}};
}

ChannelSnapshot snapshot_from_json(const json& j) {
    std::vector<UserTerminal> users;
    for (const auto& u : j.at("users")) users.push_back(user_from_json(u));
    ChannelSnapshot snap(std::move(users), params_from_json(j.at("params")));
    for (const auto& m : j.at("macro_budgets")) {
        snap.set_macro_budget(m.at("user").get<int>(), budget_from_json(m));
    }
    for (const auto& p : j.at("phantom_budgets")) {
        snap.set_phantom_budget(p.at("user").get<int>(), p.at("cell").get<int>(),
                                budget_from_json(p));
    }
    for (const auto& d : j.at("dlink_budgets")) {
        snap.set_dlink_budget(d.at("user_a").get<int>(), d.at("user_b").get<int>(),
                              budget_from_json(d));
    }
    return snap;
}

json plan_to_json(const ServingPlan& plan) {
    json directs = json::array();
    for (const auto& [cell, user] : plan.direct_phantom_users) {
        directs.push_back({{"cell", cell}, {"user", user}});
    }
    json clusters = json::array();
    for (const auto& c : plan.clusters) {
        clusters.push_back({{"cell", c.cell_id}, {"head", c.head}, {"members", c.members}});
    }
    return {{"macro_users", plan.macro_users},
            {"direct_phantom_users", directs},
            {"clusters", clusters}};
}

ServingPlan plan_from_json(const json& j) {
    ServingPlan plan;
    plan.macro_users = j.at("macro_users").get<std::vector<int>>();
    for (const auto& d : j.at("direct_phantom_users")) {
        plan.direct_phantom_users.emplace_back(d.at("cell").get<int>(), d.at("user").get<int>());
    }
    for (const auto& c : j.at("clusters")) {
        plan.clusters.push_back({c.at("cell").get<int>(), c.at("head").get<int>(),
                                 c.at("members").get<std::vector<int>>()});
    }
    return plan;
}

json energy_report_to_json(const EnergyReport& report) {
    json per_cell = json::array();
    for (const auto& c : report.per_cell) {
        per_cell.push_back({{"cell", c.cell_id}, {"energy_j", c.energy_j}});
    }
    return {{"scenario", to_string(report.scenario)},
            {"total_j", report.total_j},
            {"tx_macro_j", report.tx_macro_j},
            {"tx_phantom_j", report.tx_phantom_j},
            {"tx_d2d_j", report.tx_d2d_j},
            {"rx_total_j", report.rx_total_j},
            {"per_cell", per_cell},
            {"outage_users", report.outage_users}};
}

json trial_report_to_json(const TrialReport& report) {
    json j{{"trial", report.trial_index},
           {"seed", report.seed},
           {"users", report.user_count},
           {"rejected", report.rejected}};
    if (report.rejected) j["reject_reason"] = report.reject_reason;
    json reports = json::object();
    if (report.macro) reports["macro"] = energy_report_to_json(*report.macro);
    if (report.phantom) reports["phantom"] = energy_report_to_json(*report.phantom);
    if (report.hybrid) reports["hybrid"] = energy_report_to_json(*report.hybrid);
    if (report.supercell) reports["supercell"] = energy_report_to_json(*report.supercell);
    j["reports"] = reports;
    return j;
}

json sweep_report_to_json(const SweepReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"users", r.users},
                        {"scenario", to_string(r.scenario)},
                        {"mean_energy_j", r.mean_energy_j},
                        {"std_energy_j", r.std_energy_j},
                        {"ci95_j", r.ci95_j},
                        {"trials", r.trials},
                        {"rejected", r.rejected}});
    }
    return {{"rows", rows}};
}

// --- CSV ----------------------------------------------------------------------

std::string sweep_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "users,scenario,mean_energy_j,std_energy_j,ci95_j,trials,rejected\n";
    for (const auto& r : report.rows) {
        out << r.users << ',' << to_string(r.scenario) << ',' << format_g15(r.mean_energy_j)
            << ',' << format_g15(r.std_energy_j) << ',' << format_g15(r.ci95_j) << ','
            << r.trials << ',' << r.rejected << '\n';
    }
    return out.str();
}

void write_sweep_csv(const SweepReport& report, const std::string& path) {
    write_file(path, sweep_csv(report));
}

std::string link_budget_csv(const ChannelSnapshot& snapshot) {
    snapshot.materialize_dlinks();
    std::ostringstream out;
    out << "user_id,link_type,peer_id,distance_m,path_loss_db,shadowing_db,fading_gain,rate_bps\n";
    const auto row = [&](int user, const LinkBudget& b, int peer) {
        out << user << ',' << to_string(b.link_type) << ',' << peer << ','
            << format_g15(b.distance_m) << ',' << format_g15(b.path_loss_db) << ','
            << format_g15(b.shadowing_db) << ',' << format_g15(b.fading_gain) << ','
            << format_g15(b.rate_bps) << '\n';
    };
    for (const auto& u : snapshot.users()) {
        row(u.id, snapshot.macro_budget(u.id), -1);  // -1 = the macro BTS
        for (const auto& [cell, budget] : snapshot.phantom_budgets(u.id)) {
            row(u.id, budget, cell);
        }
    }
    for (const auto& [pair, budget] : snapshot.dlink_entries()) {
        row(pair.second, budget, pair.first);  // receiver, transmitter
    }
    return out.str();
}

void write_link_budget_csv(const ChannelSnapshot& snapshot, const std::string& path) {
    write_file(path, link_budget_csv(snapshot));
}

// --- run manifest --------------------------------------------------------------

json make_manifest(const SimConfig& cfg, const std::vector<ManifestOutput>& outputs) {
    json outs = json::array();
    for (const auto& o : outputs) {
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(o.checksum));
        outs.push_back({{"name", o.name}, {"fnv1a64", hex}});
    }
    return {{"tool_version", kToolVersion},
            {"master_seed", cfg.master_seed},
            {"config", config_to_json(cfg)},
            {"outputs", outs}};
}

}  // namespace supercell
