#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qps/rules.hpp"

namespace qps {

// One weighted transition out of a working-memory state. halt carries
// the control's own continue/halt decision, which the default derived
// control ties to goal membership.
struct ControlEntry {
    int rule_id = 0;
    std::string result;
    bool halt = false;
    double probability = 0.0;
};

// Probability-weighted control: per memory string, a distribution over
// (rule, result, decision) outcomes. Keys are whole memory strings; a
// missing key means no transition is defined and a run stalls there.
struct StochasticControl {
    std::map<std::string, std::vector<ControlEntry>> table;
};

inline constexpr double kNormalizationTolerance = 1e-9;

struct NormalizationReport {
    bool normalized = true;
    std::vector<std::pair<std::string, double>> sums;  // per condition, key order
};

// Sums each condition's probabilities; normalized iff every sum is
// within kNormalizationTolerance of 1. Never throws.
NormalizationReport validate_normalization(const StochasticControl& control);

// Structural validation: rule ids in range, no duplicate rule per
// condition, probabilities within [0,1], every result equal to applying
// the entry's rule to the condition, and the table normalized. Throws
// Error (NotNormalized for a bad sum).
void check_control(const ProductionSystem& system, const StochasticControl& control);

// The deterministic run re-expressed as a control table: for every
// state reachable from the initial set (following every matching rule),
// the conflict-resolution winner gets probability 1 and the other
// matching rules 0; halt mirrors goal membership. sample_run under this
// control retraces run_forward exactly.
StochasticControl derive_control(const ProductionSystem& system, size_t state_cap = 100000);

struct TreeNode {
    int id = 0;
    int parent = -1;               // -1 marks the root
    std::optional<int> rule;       // edge from the parent
    std::string state;
    int depth = 0;
    double edge_probability = 1.0;
    double path_probability = 1.0;
    bool halted = false;
};

// Breadth-first layers; node ids are BFS order, so layer k occupies a
// contiguous id range and children of one node appear in entry order.
struct ComputationTree {
    std::vector<TreeNode> nodes;
};

// Expands every positive-probability transition per node down to the
// given depth. Nodes whose condition is absent from the control, or
// whose incoming entry said halt, become leaves early.
ComputationTree expand_tree(const ProductionSystem& system, const StochasticControl& control,
                            const std::string& root_state, int depth);

double path_probability(const ComputationTree& tree, int node_id);

// Draws one weighted run. Deterministic for a fixed seed: the generator
// is pinned (mt19937_64) and entries are walked in listed order, so the
// same file replays the same trace on any platform.
Trace sample_run(const ProductionSystem& system, const StochasticControl& control,
                 const std::string& initial, uint64_t seed, size_t step_limit = 10000);

}  // namespace qps
