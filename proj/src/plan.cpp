#include "supercell/plan.hpp"

#include <map>
#include <string>

#include "supercell/errors.hpp"

namespace supercell {

std::size_t ServingPlan::covered_users() const {
    std::size_t n = macro_users.size() + direct_phantom_users.size();
    for (const auto& c : clusters) n += 1 + c.members.size();
    return n;
}

namespace {

void count_user(std::map<int, int>& counts, int user_id) { ++counts[user_id]; }

}  // namespace

void validate_plan(const ServingPlan& plan, const Topology& topology, bool allow_foreign_cells) {
    std::map<int, int> counts;
    for (int u : plan.macro_users) count_user(counts, u);
    for (const auto& [cell, u] : plan.direct_phantom_users) count_user(counts, u);
    for (const auto& c : plan.clusters) {
        count_user(counts, c.head);
        for (int m : c.members) count_user(counts, m);
        if (c.members.empty())
            throw MalformedPlan("cluster with head " + std::to_string(c.head) +
                                " has no members (singletons must be direct users)");
    }

    std::map<int, const UserTerminal*> by_id;
    for (const auto& u : topology.users) by_id[u.id] = &u;

    for (const auto& [id, n] : counts) {
        if (!by_id.count(id))
            throw MalformedPlan("plan references unknown user " + std::to_string(id));
        if (n != 1)
            throw MalformedPlan("user " + std::to_string(id) + " is covered " +
                                std::to_string(n) + " times");
    }
    for (const auto& [id, u] : by_id) {
        if (!counts.count(id))
            throw MalformedPlan("user " + std::to_string(id) + " is not covered by the plan");
    }

    auto check_cell = [&](int cell_id, int user_id) {
        if (!topology.phantom_by_id(cell_id))
            throw MalformedPlan("plan references unknown phantom cell " + std::to_string(cell_id));
        if (allow_foreign_cells) return;
        const auto& home = by_id.at(user_id)->home_cell;
        if (!home || *home != cell_id)
            throw MalformedPlan("user " + std::to_string(user_id) +
                                " is assigned to phantom cell " + std::to_string(cell_id) +
                                " which is not its home cell");
    };
    for (const auto& [cell, u] : plan.direct_phantom_users) check_cell(cell, u);
    for (const auto& c : plan.clusters) {
        check_cell(c.cell_id, c.head);
        for (int m : c.members) check_cell(c.cell_id, m);
    }
}

}  // namespace supercell
