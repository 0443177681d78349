#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qps/reversible.hpp"
#include "qps/system_file.hpp"

using namespace qps;

namespace {

ProductionSystem sorting() {
    return load_system(std::string(QPS_TEST_DATA) + "/sorting.ps").system;
}

std::vector<int> ids_upto(int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    return ids;
}

// iteration, memory, rule, history values, history head, output values,
// output head. The golden 25-row log for sorting "edcba".
struct GoldenRow {
    int iteration;
    const char* memory;
    const char* rule;
    int history_count;
    size_t history_head;
    int output_count;
    size_t output_head;
};

const GoldenRow kGolden[] = {
    {0, "edcba", "R1", 0, 0, 0, 0},
    {1, "edcab", "R2", 1, 0, 0, 0},
    {2, "edacb", "R3", 2, 1, 0, 0},
    {3, "eadcb", "R4", 3, 2, 0, 0},
    {4, "aedcb", "R5", 4, 3, 0, 0},
    {5, "aedbc", "R6", 5, 4, 0, 0},
    {6, "aebdc", "R7", 6, 5, 0, 0},
    {7, "abedc", "R8", 7, 6, 0, 0},
    {8, "abecd", "R9", 8, 7, 0, 0},
    {9, "abced", "R10", 9, 8, 0, 0},
    {10, "abcde", "", 10, 9, 0, 0},
    {11, "abcde", "", 10, 0, 0, 0},
    {12, "abcde", "", 10, 9, 10, 9},
    {13, "abcde", "", 10, 9, 10, 0},
    {14, "abcde", "", 10, 9, 10, 0},
    {15, "abced", "R10^-1", 9, 8, 10, 0},
    {16, "abecd", "R9^-1", 8, 7, 10, 0},
    {17, "abedc", "R8^-1", 7, 6, 10, 0},
    {18, "aebdc", "R7^-1", 6, 5, 10, 0},
    {19, "aedbc", "R6^-1", 5, 4, 10, 0},
    {20, "aedcb", "R5^-1", 4, 3, 10, 0},
    {21, "eadcb", "R4^-1", 3, 2, 10, 0},
    {22, "edacb", "R3^-1", 2, 1, 10, 0},
    {23, "edcab", "R2^-1", 1, 0, 10, 0},
    {24, "edcba", "R1^-1", 0, 0, 10, 0},
};

}  // namespace

TEST_CASE("sorting run produces the golden 25-row log") {
    ReversibleRun run = run_reversible(sorting(), "edcba", 10000, true);
    REQUIRE(run.rows.size() == 25);

    for (size_t i = 0; i < run.rows.size(); ++i) {
        const GoldenRow& want = kGolden[i];
        const ReversibleLogRow& got = run.rows[i];
        INFO("row ", i);
        CHECK(got.iteration == want.iteration);
        CHECK(got.memory == want.memory);
        CHECK(got.rule == want.rule);
        CHECK(got.history.values() == ids_upto(want.history_count));
        CHECK(got.history.head == want.history_head);
        CHECK(got.output.values() == ids_upto(want.output_count));
        CHECK(got.output.head == want.output_head);
    }

    CHECK(run.final_memory == "edcba");
    CHECK(run.output_rules == ids_upto(10));
    CHECK(run.forward_outcome == RunOutcome::GoalReached);
    CHECK(run.cell_copies == 10);
}

TEST_CASE("every permutation is restored and the output matches the fired sequence") {
    ProductionSystem sys = sorting();
    std::string memory = "abcde";
    int count = 0;
    do {
        ReversibleRun run = run_reversible(sys, memory);
        CHECK(run.final_memory == memory);
        CHECK(run.output_rules == run_forward(sys, memory).fired_sequence());
        CHECK(run.rows.size() == 2 * run.output_rules.size() + 5);
        CHECK(run.rows.back().history.all_blank());
        ++count;
    } while (std::next_permutation(memory.begin(), memory.end()));
    CHECK(count == 120);
}

TEST_CASE("already-goal input logs five phase rows with blank tapes") {
    ReversibleRun run = run_reversible(sorting(), "abcde");
    REQUIRE(run.rows.size() == 5);
    for (const ReversibleLogRow& row : run.rows) {
        CHECK(row.memory == "abcde");
        CHECK(row.history.all_blank());
        CHECK(row.output.all_blank());
    }
    CHECK(run.output_rules.empty());
    CHECK(run.forward_outcome == RunOutcome::NoRuleApplicable);
}

TEST_CASE("a rule set with duplicate actions is rejected") {
    ProductionSystem sys;
    sys.alphabet = "abc";
    sys.rules = {{1, "a", "c"}, {2, "b", "c"}};
    sys.initials = {"a"};
    sys.goals = {"c"};
    CHECK_THROWS_AS(run_reversible(sys, "a"), NotReversibleError);
}

TEST_CASE("each primitive step is invertible") {
    ProductionSystem sys = sorting();
    std::vector<StepRecord> journal;

    ReversibleMachineState initial;
    initial.memory = "edcba";
    ReversibleMachineState state = forward_phase(sys, "edcba", 10000, &journal);
    rewind_history_head(state, &journal);
    copy_history_to_output(state, &journal);
    rewind_output_head(state, &journal);
    backward_phase(state, sys, &journal);

    CHECK(state.memory == "edcba");
    CHECK(state.history.all_blank());
    CHECK(state.phase == Phase::Done);
    // F firings journal F appends, F copies, F undos, two head jumps,
    // and five phase transitions.
    CHECK(journal.size() == 3 * 10 + 7);

    // Undoing the journal in reverse order must walk the machine back
    // to its pristine configuration, one primitive transition at a time.
    for (auto it = journal.rbegin(); it != journal.rend(); ++it)
        apply_inverse_step(state, *it, sys);
    CHECK(state.memory == initial.memory);
    CHECK(state.history == initial.history);
    CHECK(state.output == initial.output);
    CHECK(state.phase == Phase::Forward);
}

TEST_CASE("inverse replay restores every intermediate snapshot") {
    ProductionSystem sys = sorting();

    // Capture the state after each phase, then rewind phase by phase.
    std::vector<StepRecord> j1, j2, j3, j4, j5;
    ReversibleMachineState s1 = forward_phase(sys, "cadbe", 10000, &j1);
    ReversibleMachineState s2 = s1;
    rewind_history_head(s2, &j2);
    ReversibleMachineState s3 = s2;
    copy_history_to_output(s3, &j3);
    ReversibleMachineState s4 = s3;
    rewind_output_head(s4, &j4);
    ReversibleMachineState s5 = s4;
    backward_phase(s5, sys, &j5);

    auto rewind = [&](ReversibleMachineState state, const std::vector<StepRecord>& journal) {
        for (auto it = journal.rbegin(); it != journal.rend(); ++it)
            apply_inverse_step(state, *it, sys);
        return state;
    };
    CHECK(rewind(s5, j5) == s4);
    CHECK(rewind(s4, j4) == s3);
    CHECK(rewind(s3, j3) == s2);
    CHECK(rewind(s2, j2) == s1);
}

TEST_CASE("tape appends land on blank cells only") {
    ReversibleMachineState state = forward_phase(sorting(), "edcba", 10000);
    CHECK(state.history.written_count() == 10);
    for (size_t i = 0; i < 10; ++i) CHECK(state.history.at(i).has_value());
    // Head rests on the last written cell.
    CHECK(state.history.head == 9);
}

TEST_CASE("step limit propagates into the reversible run") {
    // With a budget of 3 the forward stage stops early; reversal still
    // restores the initial memory and reports the truncated outcome.
    ReversibleRun run = run_reversible(sorting(), "edcba", 3);
    CHECK(run.forward_outcome == RunOutcome::StepLimit);
    CHECK(run.output_rules == std::vector<int>{1, 2, 3});
    CHECK(run.final_memory == "edcba");
}
