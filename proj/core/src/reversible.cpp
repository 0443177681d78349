#include "qps/reversible.hpp"

#include <algorithm>
#include <functional>

namespace qps {

std::optional<int> Tape::at(size_t index) const {
    if (index >= cells.size()) return std::nullopt;
    return cells[index];
}

bool Tape::all_blank() const {
    return std::none_of(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); });
}

size_t Tape::written_count() const {
    return static_cast<size_t>(
        std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); }));
}

size_t Tape::last_written() const {
    for (size_t i = cells.size(); i > 0; --i)
        if (cells[i - 1]) return i - 1;
    return 0;
}

std::vector<int> Tape::values() const {
    std::vector<int> out;
    for (const auto& cell : cells)
        if (cell) out.push_back(*cell);
    return out;
}

namespace {

void journal_push(std::vector<StepRecord>* journal, StepRecord record) {
    if (journal) journal->push_back(record);
}

// Appends one value at the blank frontier; the head ends on the written
// cell, matching the printed convention of marking the last entry.
size_t tape_append(Tape& tape, int value) {
    if (tape.head < tape.cells.size() && tape.cells[tape.head]) ++tape.head;
    if (tape.head >= tape.cells.size()) tape.cells.resize(tape.head + 1);
    tape.cells[tape.head] = value;
    return tape.head;
}

void change_phase(ReversibleMachineState& state, Phase next, std::vector<StepRecord>* journal) {
    StepRecord record;
    record.kind = StepRecord::Kind::PhaseChange;
    record.phase_before = state.phase;
    journal_push(journal, record);
    state.phase = next;
}

void fire_into_history(ReversibleMachineState& state, const ProductionSystem& system, int rule_id,
                       std::vector<StepRecord>* journal) {
    const Production& rule = system.rule(rule_id);
    size_t pos = *find_leftmost(state.memory, rule.precondition);
    StepRecord record;
    record.kind = StepRecord::Kind::FireRule;
    record.rule_id = rule_id;
    record.position = pos;
    record.history_head_before = state.history.head;
    record.phase_before = state.phase;
    state.memory.replace(pos, rule.precondition.size(), rule.action);
    record.cell = tape_append(state.history, rule_id);
    journal_push(journal, record);
}

void require_reversible(const ProductionSystem& system) {
    PropertyCheck check = check_reversible(system);
    if (check.holds) return;
    std::string what = "rules share an action:";
    for (const auto& [a, b] : check.conflicts)
        what += " (" + rule_label(a) + "," + rule_label(b) + ")";
    throw NotReversibleError(what);
}

using RowSink = std::function<void(const std::string& memory, const std::string& rule)>;

RunOutcome forward_loop(ReversibleMachineState& state, const ProductionSystem& system,
                        size_t step_limit, std::vector<StepRecord>* journal,
                        const RowSink& emit_row) {
    RunOutcome outcome = RunOutcome::GoalReached;
    bool halted = false;
    size_t fired = 0;
    while (true) {
        std::vector<int> conflict = match_rules(system, state.memory);
        bool fire = !halted && !conflict.empty() && fired < step_limit;
        if (emit_row)
            emit_row(state.memory,
                     fire ? rule_label(resolve_conflict(system, conflict)) : std::string());
        if (!fire) {
            if (!halted) outcome = conflict.empty() ? RunOutcome::NoRuleApplicable
                                                    : RunOutcome::StepLimit;
            break;
        }
        fire_into_history(state, system, resolve_conflict(system, conflict), journal);
        ++fired;
        halted = system.is_goal(state.memory);
    }
    return outcome;
}

size_t backward_loop(ReversibleMachineState& state, const ProductionSystem& system,
                     std::vector<StepRecord>* journal, const RowSink& emit_row) {
    size_t undone = 0;
    while (!state.history.all_blank()) {
        size_t cell = state.history.head;
        std::optional<int> code = state.history.at(cell);
        if (!code)
            throw InverseNoMatchError("history head on a blank cell with entries remaining");
        Production rule = invert(system.rule(*code));
        std::optional<size_t> pos = find_leftmost(state.memory, rule.precondition);
        if (!pos)
            throw InverseNoMatchError("undoing " + rule_label(rule) + ": '" + rule.precondition +
                                      "' not in '" + state.memory + "'");
        StepRecord record;
        record.kind = StepRecord::Kind::UndoRule;
        record.rule_id = *code;
        record.position = *pos;
        record.cell = cell;
        record.history_head_before = state.history.head;
        record.phase_before = state.phase;
        state.memory.replace(*pos, rule.precondition.size(), rule.action);
        state.history.cells[cell] = std::nullopt;
        if (state.history.head > 0) --state.history.head;
        journal_push(journal, record);
        ++undone;
        if (emit_row) emit_row(state.memory, rule_label(rule));
    }
    return undone;
}

}  // namespace

void apply_inverse_step(ReversibleMachineState& state, const StepRecord& record,
                        const ProductionSystem& system) {
    switch (record.kind) {
        case StepRecord::Kind::FireRule: {
            const Production& rule = system.rule(record.rule_id);
            state.memory.replace(record.position, rule.action.size(), rule.precondition);
            state.history.cells.pop_back();
            state.history.head = record.history_head_before;
            break;
        }
        case StepRecord::Kind::RewindHead: {
            Tape& tape = record.output_tape ? state.output : state.history;
            tape.head = record.output_tape ? record.output_head_before
                                           : record.history_head_before;
            break;
        }
        case StepRecord::Kind::CopyCell: {
            state.output.cells.pop_back();
            state.output.head = record.output_head_before;
            state.history.head = record.history_head_before;
            break;
        }
        case StepRecord::Kind::UndoRule: {
            const Production& rule = system.rule(record.rule_id);
            state.memory.replace(record.position, rule.precondition.size(), rule.action);
            state.history.cells[record.cell] = record.rule_id;
            state.history.head = record.history_head_before;
            break;
        }
        case StepRecord::Kind::PhaseChange:
            state.phase = record.phase_before;
            break;
    }
}

ReversibleMachineState forward_phase(const ProductionSystem& system, const std::string& initial,
                                     size_t step_limit, std::vector<StepRecord>* journal) {
    require_reversible(system);
    ReversibleMachineState state;
    state.memory = initial;
    forward_loop(state, system, step_limit, journal, nullptr);
    change_phase(state, Phase::RewindHistory, journal);
    return state;
}

void rewind_history_head(ReversibleMachineState& state, std::vector<StepRecord>* journal) {
    StepRecord record;
    record.kind = StepRecord::Kind::RewindHead;
    record.output_tape = false;
    record.history_head_before = state.history.head;
    record.phase_before = state.phase;
    journal_push(journal, record);
    state.history.head = 0;
    if (state.phase == Phase::RewindHistory) change_phase(state, Phase::CopyToOutput, journal);
}

void copy_history_to_output(ReversibleMachineState& state, std::vector<StepRecord>* journal) {
    if (state.history.head != 0)
        throw Error("copy requires the history head at the tape's start");
    size_t count = state.history.all_blank() ? 0 : state.history.last_written() + 1;
    for (size_t i = 0; i < count; ++i) {
        if (state.output.at(i))
            throw OutputNotBlankError("output cell " + std::to_string(i) + " already written");
        StepRecord record;
        record.kind = StepRecord::Kind::CopyCell;
        record.cell = i;
        record.history_head_before = state.history.head;
        record.output_head_before = state.output.head;
        record.phase_before = state.phase;
        state.history.head = i;
        if (i >= state.output.cells.size()) state.output.cells.resize(i + 1);
        state.output.cells[i] = state.history.cells[i];
        state.output.head = i;
        journal_push(journal, record);
    }
    if (state.phase == Phase::CopyToOutput) change_phase(state, Phase::RewindOutput, journal);
}

void rewind_output_head(ReversibleMachineState& state, std::vector<StepRecord>* journal) {
    StepRecord record;
    record.kind = StepRecord::Kind::RewindHead;
    record.output_tape = true;
    record.output_head_before = state.output.head;
    record.phase_before = state.phase;
    journal_push(journal, record);
    state.output.head = 0;
    if (state.phase == Phase::RewindOutput) change_phase(state, Phase::Backward, journal);
}

void backward_phase(ReversibleMachineState& state, const ProductionSystem& system,
                    std::vector<StepRecord>* journal) {
    backward_loop(state, system, journal, nullptr);
    change_phase(state, Phase::Done, journal);
}

ReversibleRun run_reversible(const ProductionSystem& system, size_t step_limit, bool verify) {
    return run_reversible(system, system.initial(), step_limit, verify);
}

ReversibleRun run_reversible(const ProductionSystem& system, const std::string& initial,
                             size_t step_limit, bool verify) {
    require_reversible(system);
    ReversibleRun run;
    ReversibleMachineState state;
    state.memory = initial;

    int iteration = 0;
    auto emit = [&](const std::string& memory, const std::string& rule) {
        run.rows.push_back({iteration++, memory, rule, state.history, state.output});
    };

    run.forward_outcome = forward_loop(state, system, step_limit, nullptr, emit);
    state.phase = Phase::RewindHistory;

    size_t history_extent = state.history.all_blank() ? 0 : state.history.last_written() + 1;
    run.head_moves += state.history.head;
    rewind_history_head(state, nullptr);
    emit(state.memory, "");

    copy_history_to_output(state, nullptr);
    run.cell_copies = history_extent;
    emit(state.memory, "");

    run.head_moves += state.output.head;
    rewind_output_head(state, nullptr);
    emit(state.memory, "");

    // The backward stage's opening row: the configuration it starts from.
    emit(state.memory, "");

    backward_loop(state, system, nullptr, emit);
    state.phase = Phase::Done;

    run.final_memory = state.memory;
    run.output_rules = state.output.values();
    if (run.final_memory != initial)
        throw ReversalMismatchError("backward stage ended at '" + run.final_memory +
                                    "', expected '" + initial + "'");
    if (verify) {
        Trace trace = run_forward(system, initial, step_limit);
        if (trace.fired_sequence() != run.output_rules)
            throw ReversalMismatchError("output tape disagrees with a forward re-run");
    }
    return run;
}

}  // namespace qps
