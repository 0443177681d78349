#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qps/grover.hpp"
#include "qps/perf_model.hpp"
#include "qps/permutation_op.hpp"
#include "qps/probabilistic.hpp"
#include "qps/reversible.hpp"
#include "qps/rules.hpp"
#include "qps/statevector.hpp"

// Text forms for every artifact the tools emit. All writers are
// byte-stable: the same value always renders to the same bytes, so
// golden files diff cleanly. Each writer has a parser and the pair
// satisfies write(parse(write(v))) == write(v). Fields never need
// quoting: alphabet symbols exclude the separator characters.

namespace qps {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& token);

std::string write_trace_csv(const std::vector<TraceStep>& steps);
std::vector<TraceStep> parse_trace_csv(const std::string& text);

// Cells joined by ';', blanks as '_', trailing blanks beyond the head
// trimmed; a blank tape renders as a single '_'.
std::string render_tape(const Tape& tape);
std::string write_reversible_csv(const std::vector<ReversibleLogRow>& rows);
std::vector<ReversibleLogRow> parse_reversible_csv(const std::string& text);

std::string write_tree_csv(const ComputationTree& tree);
// Rebuilds ids, parents, states, depths, and path probabilities; edge
// probabilities are not a column, so parsed nodes keep the default.
ComputationTree parse_tree_csv(const std::string& text);

std::string write_operator_map(const PermutationOperator& op);
PermutationOperator parse_operator_map(const std::string& text);
std::string write_operator_dense(const PermutationOperator& op);
std::vector<std::vector<int>> parse_dense_csv(const std::string& text);

std::string write_surface_csv(const std::vector<SurfaceRow>& rows);
std::vector<SurfaceRow> parse_surface_csv(const std::string& text);

// The run report as JSON lines: one config object, one object per
// recorded iteration, one per aggregated measurement.
struct GroverReport {
    std::string mode;
    int n = 0;
    int p = 0;
    int depth = 0;
    int iterations = 0;
    uint64_t initial_states = 0;
    uint64_t marked = 0;
    uint64_t seed = 0;
    uint64_t shots = 0;
    std::vector<GroverIteration> history;
    std::vector<Measurement> measurements;
};

GroverReport make_report(const OracleSpec& spec, const GroverRun& run, uint64_t seed,
                         uint64_t shots);
std::string write_grover_jsonl(const GroverReport& report);
GroverReport parse_grover_jsonl(const std::string& text);

struct AmplitudeRow {
    uint64_t index = 0;
    uint64_t x = 0;
    uint64_t y = 0;
    uint64_t z = 0;
    std::string state;  // decoded x, empty when the code is unassigned
    double re = 0.0;
    double im = 0.0;
};

std::string write_amplitudes_csv(const StateVector& v, const OracleSpec& spec);
std::vector<AmplitudeRow> parse_amplitudes_csv(const std::string& text);

}  // namespace qps
