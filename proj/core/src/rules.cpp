#include "qps/rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace qps {

Production invert(const Production& rule) {
    return Production{rule.id, rule.action, rule.precondition, !rule.inverse};
}

std::string rule_label(const Production& rule) {
    std::string label = rule_label(rule.id);
    if (rule.inverse) label += "^-1";
    return label;
}

std::string rule_label(int id) {
    return "R" + std::to_string(id);
}

bool ProductionSystem::is_goal(const std::string& memory) const {
    return std::find(goals.begin(), goals.end(), memory) != goals.end();
}

bool valid_symbol(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u >= 0x7f) return false;  // control, space, DEL, non-ASCII
    switch (c) {
        case ',':
        case ';':
        case '#':
        case '"':
            return false;
        default:
            return true;
    }
}

namespace {

bool in_alphabet(const std::string& text, const std::string& alphabet) {
    return std::all_of(text.begin(), text.end(),
                       [&](char c) { return alphabet.find(c) != std::string::npos; });
}

}  // namespace

void validate(const ProductionSystem& system) {
    if (system.alphabet.empty()) throw Error("alphabet is empty");
    std::set<char> seen;
    for (char c : system.alphabet) {
        if (!valid_symbol(c))
            throw Error(std::string("alphabet symbol '") + c + "' not allowed");
        if (!seen.insert(c).second)
            throw Error(std::string("alphabet symbol '") + c + "' repeated");
    }
    if (system.rules.empty()) throw Error("no rules");
    for (size_t i = 0; i < system.rules.size(); ++i) {
        const Production& rule = system.rules[i];
        if (rule.id != static_cast<int>(i) + 1)
            throw Error("rule ids must run 1.." + std::to_string(system.rules.size()) +
                        " in order, got " + std::to_string(rule.id) + " at position " +
                        std::to_string(i + 1));
        if (rule.precondition.empty() || rule.action.empty())
            throw Error("rule " + std::to_string(rule.id) + " has an empty side");
        if (!in_alphabet(rule.precondition, system.alphabet) ||
            !in_alphabet(rule.action, system.alphabet))
            throw Error("rule " + std::to_string(rule.id) + " uses symbols outside the alphabet");
    }
    if (system.initials.empty()) throw Error("initial state set is empty");
    for (const std::string& state : system.initials)
        if (!in_alphabet(state, system.alphabet))
            throw Error("initial state '" + state + "' uses symbols outside the alphabet");
    if (std::set<std::string>(system.initials.begin(), system.initials.end()).size() !=
        system.initials.size())
        throw Error("initial state set has duplicates");
    if (system.goals.empty()) throw Error("goal set is empty");
    for (const std::string& goal : system.goals)
        if (!in_alphabet(goal, system.alphabet))
            throw Error("goal '" + goal + "' uses symbols outside the alphabet");
    if (system.strategy == ConflictStrategy::CustomOrdered) {
        if (system.priority.size() != system.rules.size())
            throw Error("priority list must mention every rule exactly once");
        std::set<int> ids(system.priority.begin(), system.priority.end());
        if (ids.size() != system.rules.size() || *ids.begin() != 1 ||
            *ids.rbegin() != static_cast<int>(system.rules.size()))
            throw Error("priority list must mention every rule exactly once");
    }
}

std::vector<int> match_rules(const ProductionSystem& system, const std::string& memory) {
    std::vector<int> matched;
    for (const Production& rule : system.rules)
        if (memory.find(rule.precondition) != std::string::npos) matched.push_back(rule.id);
    return matched;
}

int resolve_conflict(const ProductionSystem& system, const std::vector<int>& conflict_set) {
    if (conflict_set.empty()) throw Error("conflict set is empty");
    if (system.strategy == ConflictStrategy::CustomOrdered) {
        for (int id : system.priority)
            if (std::find(conflict_set.begin(), conflict_set.end(), id) != conflict_set.end())
                return id;
        throw Error("priority list covers no rule in the conflict set");
    }
    return *std::min_element(conflict_set.begin(), conflict_set.end());
}

std::optional<size_t> find_leftmost(const std::string& memory, const std::string& pattern) {
    size_t pos = memory.find(pattern);
    if (pos == std::string::npos) return std::nullopt;
    return pos;
}

std::string apply_rule(const std::string& memory, const Production& rule) {
    std::optional<size_t> pos = find_leftmost(memory, rule.precondition);
    if (!pos)
        throw NoMatchError("rule " + std::to_string(rule.id) + " precondition '" +
                           rule.precondition + "' not in '" + memory + "'");
    std::string next = memory;
    next.replace(*pos, rule.precondition.size(), rule.action);
    return next;
}

std::vector<int> Trace::fired_sequence() const {
    std::vector<int> fired;
    for (const TraceStep& step : steps)
        if (step.fired) fired.push_back(*step.fired);
    return fired;
}

Trace run_forward(const ProductionSystem& system, size_t step_limit) {
    return run_forward(system, system.initial(), step_limit);
}

Trace run_forward(const ProductionSystem& system, const std::string& initial, size_t step_limit) {
    Trace trace;
    std::string memory = initial;
    int iteration = 0;
    while (true) {
        std::vector<int> conflict_set = match_rules(system, memory);
        if (conflict_set.empty()) {
            trace.steps.push_back({iteration, memory, conflict_set, std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::NoRuleApplicable;
            break;
        }
        if (static_cast<size_t>(iteration) >= step_limit) {
            trace.steps.push_back({iteration, memory, conflict_set, std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::StepLimit;
            break;
        }
        int fired = resolve_conflict(system, conflict_set);
        const Production& rule = system.rules[static_cast<size_t>(fired) - 1];
        std::string next = apply_rule(memory, rule);
        bool done = system.is_goal(next);
        trace.steps.push_back({iteration, memory, conflict_set, fired,
                               done ? Decision::Halt : Decision::Continue});
        memory = next;
        ++iteration;
        if (done) {
            trace.steps.push_back(
                {iteration, memory, match_rules(system, memory), std::nullopt, Decision::Halt});
            trace.outcome = RunOutcome::GoalReached;
            break;
        }
    }
    trace.final_memory = memory;
    return trace;
}

namespace {

PropertyCheck check_duplicate_sides(const ProductionSystem& system,
                                    const std::string Production::*side) {
    PropertyCheck result;
    std::map<std::string, std::vector<int>> by_side;
    for (const Production& rule : system.rules) by_side[rule.*side].push_back(rule.id);
    for (const auto& [text, ids] : by_side)
        for (size_t i = 0; i + 1 < ids.size(); ++i)
            for (size_t j = i + 1; j < ids.size(); ++j)
                result.conflicts.emplace_back(ids[i], ids[j]);
    std::sort(result.conflicts.begin(), result.conflicts.end());
    result.holds = result.conflicts.empty();
    return result;
}

}  // namespace

PropertyCheck check_deterministic(const ProductionSystem& system) {
    return check_duplicate_sides(system, &Production::precondition);
}

PropertyCheck check_reversible(const ProductionSystem& system) {
    return check_duplicate_sides(system, &Production::action);
}

}  // namespace qps
