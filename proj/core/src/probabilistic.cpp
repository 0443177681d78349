#include "qps/probabilistic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>

namespace qps {

NormalizationReport validate_normalization(const StochasticControl& control) {
    NormalizationReport report;
    for (const auto& [condition, entries] : control.table) {
        double sum = 0.0;
        for (const ControlEntry& entry : entries) sum += entry.probability;
        report.sums.emplace_back(condition, sum);
        if (std::abs(sum - 1.0) > kNormalizationTolerance) report.normalized = false;
    }
    return report;
}

void check_control(const ProductionSystem& system, const StochasticControl& control) {
    for (const auto& [condition, entries] : control.table) {
        std::set<int> seen;
        for (const ControlEntry& entry : entries) {
            if (entry.rule_id < 1 || entry.rule_id > static_cast<int>(system.rules.size()))
                throw Error("condition '" + condition + "': unknown rule id " +
                            std::to_string(entry.rule_id));
            if (!seen.insert(entry.rule_id).second)
                throw Error("condition '" + condition + "': rule " + rule_label(entry.rule_id) +
                            " listed twice");
            if (entry.probability < 0.0 || entry.probability > 1.0)
                throw Error("condition '" + condition + "': probability " +
                            std::to_string(entry.probability) + " outside [0,1]");
            const Production& rule = system.rule(entry.rule_id);
            if (!find_leftmost(condition, rule.precondition))
                throw Error("condition '" + condition + "': rule " + rule_label(entry.rule_id) +
                            " does not match");
            if (apply_rule(condition, rule) != entry.result)
                throw Error("condition '" + condition + "': result '" + entry.result +
                            "' disagrees with applying " + rule_label(entry.rule_id));
        }
    }
    NormalizationReport report = validate_normalization(control);
    if (!report.normalized) {
        for (const auto& [condition, sum] : report.sums)
            if (std::abs(sum - 1.0) > kNormalizationTolerance)
                throw NotNormalizedError("condition '" + condition + "' sums to " +
                                         std::to_string(sum));
    }
}

StochasticControl derive_control(const ProductionSystem& system, size_t state_cap) {
    StochasticControl control;
    std::set<std::string> visited(system.initials.begin(), system.initials.end());
    std::deque<std::string> frontier(system.initials.begin(), system.initials.end());
    while (!frontier.empty()) {
        std::string state = frontier.front();
        frontier.pop_front();
        std::vector<int> conflict = match_rules(system, state);
        if (conflict.empty()) continue;
        int winner = resolve_conflict(system, conflict);
        std::vector<ControlEntry> entries;
        for (int id : conflict) {
            std::string result = apply_rule(state, system.rule(id));
            entries.push_back({id, result, system.is_goal(result), id == winner ? 1.0 : 0.0});
            if (visited.insert(result).second) {
                if (visited.size() > state_cap)
                    throw Error("state space exceeds cap of " + std::to_string(state_cap));
                frontier.push_back(result);
            }
        }
        control.table.emplace(std::move(state), std::move(entries));
    }
    return control;
}

ComputationTree expand_tree(const ProductionSystem& system, const StochasticControl& control,
                            const std::string& root_state, int depth) {
    (void)system;  // transitions come entirely from the control table
    ComputationTree tree;
    tree.nodes.push_back({0, -1, std::nullopt, root_state, 0, 1.0, 1.0, false});
    for (size_t next = 0; next < tree.nodes.size(); ++next) {
        // Children push back on the same vector, so take copies of the
        // fields the loop body needs before it grows.
        TreeNode node = tree.nodes[next];
        if (node.depth >= depth || node.halted) continue;
        auto found = control.table.find(node.state);
        if (found == control.table.end()) continue;
        for (const ControlEntry& entry : found->second) {
            if (entry.probability <= 0.0) continue;
            tree.nodes.push_back({static_cast<int>(tree.nodes.size()), node.id, entry.rule_id,
                                  entry.result, node.depth + 1, entry.probability,
                                  node.path_probability * entry.probability, entry.halt});
        }
    }
    return tree;
}

double path_probability(const ComputationTree& tree, int node_id) {
    if (node_id < 0 || node_id >= static_cast<int>(tree.nodes.size()))
        throw Error("node " + std::to_string(node_id) + " not in tree");
    double product = 1.0;
    for (int id = node_id; id != -1; id = tree.nodes[static_cast<size_t>(id)].parent)
        product *= tree.nodes[static_cast<size_t>(id)].edge_probability;
    return product;
}

namespace {

double next_uniform(std::mt19937_64& rng) {
    // 53-bit mantissa mapping, identical on every platform; the library
    // distributions are not specified bit-for-bit across implementations.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const ControlEntry* sample_entry(const std::vector<ControlEntry>& entries,
                                 std::mt19937_64& rng) {
    double u = next_uniform(rng);
    double cumulative = 0.0;
    const ControlEntry* last_positive = nullptr;
    for (const ControlEntry& entry : entries) {
        if (entry.probability > 0.0) last_positive = &entry;
        cumulative += entry.probability;
        if (u < cumulative) return &entry;
    }
    return last_positive;  // rounding residue at the top of the walk
}

}  // namespace

Trace sample_run(const ProductionSystem& system, const StochasticControl& control,
                 const std::string& initial, uint64_t seed, size_t step_limit) {
    if (!validate_normalization(control).normalized)
        throw NotNormalizedError("control table is not normalized");
    std::mt19937_64 rng(seed);
    Trace trace;
    std::string memory = initial;
    int iteration = 0;
    while (true) {
        auto found = control.table.find(memory);
        if (found == control.table.end() || found->second.empty()) {
            trace.steps.push_back(
                {iteration, memory, match_rules(system, memory), std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::NoRuleApplicable;
            break;
        }
        if (static_cast<size_t>(iteration) >= step_limit) {
            trace.steps.push_back(
                {iteration, memory, match_rules(system, memory), std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::StepLimit;
            break;
        }
        const ControlEntry* entry = sample_entry(found->second, rng);
        if (!entry) throw NotNormalizedError("condition '" + memory + "' has no positive entry");
        std::vector<int> conflict;
        for (const ControlEntry& e : found->second) conflict.push_back(e.rule_id);
        std::sort(conflict.begin(), conflict.end());
        trace.steps.push_back({iteration, memory, conflict, entry->rule_id,
                               entry->halt ? Decision::Halt : Decision::Continue});
        memory = entry->result;
        ++iteration;
        if (entry->halt) {
            trace.steps.push_back(
                {iteration, memory, match_rules(system, memory), std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::GoalReached;
            break;
        }
    }
    trace.final_memory = memory;
    return trace;
}

}  // namespace qps
