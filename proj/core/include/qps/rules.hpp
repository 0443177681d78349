#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

// Rewriting rule precondition -> action. Rules are numbered from 1 so
// that code 0 can stay reserved as padding in fixed-width encodings.
struct Production {
    int id = 0;
    std::string precondition;
    std::string action;
    bool inverse = false;

    bool operator==(const Production&) const = default;
};

// Inverse rule: swap the two sides, keep the id, flip the inverse mark.
Production invert(const Production& rule);

// "R3" for a forward rule, "R3^-1" for an inverted one.
std::string rule_label(const Production& rule);
std::string rule_label(int id);

enum class ConflictStrategy {
    LowestRuleId,   // fire the matching rule with the smallest id
    CustomOrdered,  // fire the first match in an explicit priority list
};

struct ProductionSystem {
    std::string alphabet;              // distinct symbols, order fixes codes
    std::vector<Production> rules;     // ids 1..n in ascending order
    std::vector<std::string> initials; // the initial set S_i, file order
    std::vector<std::string> goals;    // the goal set S_g
    ConflictStrategy strategy = ConflictStrategy::LowestRuleId;
    std::vector<int> priority;         // used by CustomOrdered only

    const std::string& initial() const { return initials.front(); }
    bool is_goal(const std::string& memory) const;
    const Production& rule(int id) const { return rules[static_cast<size_t>(id) - 1]; }
};

// Symbols usable in an alphabet: printable ASCII, no whitespace, and
// none of the characters the text formats use as structure.
bool valid_symbol(char c);

// Throws Error describing the first structural problem: empty or
// duplicated alphabet symbols, invalid symbols, rule ids not 1..n
// ascending, empty rule sides, rule or state text outside the alphabet,
// empty goal set, bad priority list.
void validate(const ProductionSystem& system);

// Ids of all rules whose precondition occurs in memory, ascending.
std::vector<int> match_rules(const ProductionSystem& system, const std::string& memory);

// Picks the rule to fire from a non-empty conflict set.
int resolve_conflict(const ProductionSystem& system, const std::vector<int>& conflict_set);

// Rewrites the leftmost occurrence of the rule's precondition.
// Throws NoMatchError when the precondition is absent.
std::string apply_rule(const std::string& memory, const Production& rule);

std::optional<size_t> find_leftmost(const std::string& memory, const std::string& pattern);

enum class Decision { Continue, Halt };

enum class RunOutcome { GoalReached, NoRuleApplicable, StepLimit };

// One recognize-act cycle. The final row of every trace is terminal:
// it shows the halting memory, its conflict set, no fired rule, and
// Decision::Halt. decision is Halt exactly when no rule fired or the
// memory after firing is a goal.
struct TraceStep {
    int iteration = 0;
    std::string memory;              // before firing
    std::vector<int> conflict_set;
    std::optional<int> fired;
    Decision decision = Decision::Continue;
};

struct Trace {
    std::vector<TraceStep> steps;
    RunOutcome outcome = RunOutcome::GoalReached;
    std::string final_memory;

    std::vector<int> fired_sequence() const;
};

// Runs recognize-act cycles until the goal is reached, no rule applies,
// or step_limit firings have happened.
Trace run_forward(const ProductionSystem& system, size_t step_limit = 10000);
Trace run_forward(const ProductionSystem& system, const std::string& initial, size_t step_limit = 10000);

// Pairs of rule ids sharing a precondition (conflicting domains) or an
// action (conflicting ranges). Empty pair list means the property holds.
struct PropertyCheck {
    bool holds = true;
    std::vector<std::pair<int, int>> conflicts;
};

PropertyCheck check_deterministic(const ProductionSystem& system);
PropertyCheck check_reversible(const ProductionSystem& system);

}  // namespace qps
