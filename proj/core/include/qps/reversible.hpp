#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qps/rules.hpp"

namespace qps {

// One tape of the three-tape machine. Cells hold rule ids; a blank cell
// is an explicit absent value, never rule id 0. The head rests on the
// last written cell after an append, so the printed log can mark it.
struct Tape {
    std::vector<std::optional<int>> cells;
    size_t head = 0;

    std::optional<int> at(size_t index) const;
    bool all_blank() const;
    size_t written_count() const;
    // Index of the last non-blank cell; 0 when the tape is blank.
    size_t last_written() const;
    // Non-blank cell values in order, blanks skipped.
    std::vector<int> values() const;

    bool operator==(const Tape&) const = default;
};

enum class Phase { Forward, RewindHistory, CopyToOutput, RewindOutput, Backward, Done };

// The machine's whole configuration. Snapshots of this struct are what
// the per-step undo test compares.
struct ReversibleMachineState {
    std::string memory;
    Tape history;
    Tape output;
    Phase phase = Phase::Forward;

    bool operator==(const ReversibleMachineState&) const = default;
};

// Record of a single primitive transition, carrying what is needed to
// run it backward. Head positions are stored as before-values because
// several ops clamp or rewind and the inverse cannot recompute them.
struct StepRecord {
    enum class Kind {
        FireRule,     // memory rewrite at pos + history append
        RewindHead,   // a head jump (history or output)
        CopyCell,     // one cell history -> output, both heads advance
        UndoRule,     // inverse memory rewrite + history cell blanked
        PhaseChange,  // phase marker, no tape or memory effect
    };
    Kind kind;
    int rule_id = 0;         // FireRule / UndoRule
    size_t position = 0;     // match position in memory
    size_t cell = 0;         // tape cell touched (CopyCell / UndoRule / FireRule)
    bool output_tape = false;  // RewindHead: which head jumped
    size_t history_head_before = 0;
    size_t output_head_before = 0;
    Phase phase_before = Phase::Forward;
};

// Undoes one recorded step in place. Exercised by tests to show every
// primitive transition of the machine is itself invertible.
void apply_inverse_step(ReversibleMachineState& state, const StepRecord& record,
                        const ProductionSystem& system);

// Phase drivers. Each appends its primitive steps to the journal and
// leaves the state in the next phase.
ReversibleMachineState forward_phase(const ProductionSystem& system, const std::string& initial,
                                     size_t step_limit, std::vector<StepRecord>* journal = nullptr);
void rewind_history_head(ReversibleMachineState& state, std::vector<StepRecord>* journal = nullptr);
void copy_history_to_output(ReversibleMachineState& state,
                            std::vector<StepRecord>* journal = nullptr);
void rewind_output_head(ReversibleMachineState& state, std::vector<StepRecord>* journal = nullptr);
void backward_phase(ReversibleMachineState& state, const ProductionSystem& system,
                    std::vector<StepRecord>* journal = nullptr);

// One printed row of the run log. rule is "R3" while running forward
// (the rule the row's iteration fires), "R3^-1" while running backward
// (the rule the iteration just undid), empty otherwise.
struct ReversibleLogRow {
    int iteration = 0;
    std::string memory;
    std::string rule;
    Tape history;
    Tape output;
};

struct ReversibleRun {
    std::vector<ReversibleLogRow> rows;
    std::string final_memory;        // equals the initial state on success
    std::vector<int> output_rules;   // the fired sequence, read off the output tape
    RunOutcome forward_outcome = RunOutcome::GoalReached;
    size_t cell_copies = 0;          // per-cell cost of the copy phase
    size_t head_moves = 0;           // per-cell cost of the two rewinds
};

// Runs all five phases and logs one row per firing, one per rewind, one
// for the copy, one marking the backward stage's start, and one per
// undo: 2F + 5 rows for F firings. Requires a reversible rule set.
// With verify set, re-runs the forward pass and cross-checks the output
// tape against its fired sequence (ReversalMismatch on disagreement);
// the restored memory is always checked.
ReversibleRun run_reversible(const ProductionSystem& system, const std::string& initial,
                             size_t step_limit = 10000, bool verify = false);
ReversibleRun run_reversible(const ProductionSystem& system, size_t step_limit = 10000,
                             bool verify = false);

}  // namespace qps
