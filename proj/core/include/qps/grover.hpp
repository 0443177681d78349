#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qps/encoding.hpp"
#include "qps/rules.hpp"
#include "qps/statevector.hpp"

namespace qps {

// Enumeration of the states the query register can hold, in definition
// order. code = position; n bits cover the table.
struct StateTable {
    std::vector<std::string> states;
    std::map<std::string, uint64_t> codes;

    uint64_t code_of(const std::string& state) const;   // EncodingOverflow if absent
    const std::string& state_at(uint64_t code) const;   // DecodeFailure if unassigned
    bool assigned(uint64_t code) const { return code < states.size(); }
};

StateTable make_state_table(const std::vector<std::string>& states);

// Neighbour expansion for a too-small initial set: adds every state
// reachable within the given number of firings, following all matching
// rules, in discovery order.
std::vector<std::string> expand_initial_states(const ProductionSystem& system, int depth = 1);

// The run-d-steps-and-test oracle. f(x) is 1 when a run capped at
// `depth` firings ends in a goal state; g(x) packs the fired rule codes
// (1-based, first firing in the most significant slot) into p bits.
// A state already in the goal set counts as found with zero firings.
struct OracleSpec {
    ProductionSystem system;
    int depth = 1;
    StateTable states;
    Encoding encoding;
    int slot_bits = 0;                 // width of one fired-rule slot
    RegisterLayout layout;             // n from the state table, p = depth * slot_bits

    std::vector<uint8_t> f_table;      // indexed by x code; unassigned codes hold 0
    std::vector<uint64_t> g_table;

    int classical_f(uint64_t x) const;       // DecodeFailure on unassigned x
    uint64_t classical_g(uint64_t x) const;
};

OracleSpec make_oracle_spec(const ProductionSystem& system, int depth);

// Uniform superposition over the initial states with y in (|0>-|1>)/sqrt(2)
// and z zeroed.
StateVector prepare_initial_superposition(const std::vector<std::string>& initial_states,
                                          const OracleSpec& spec);

// |x,y,z> -> |x, y XOR f(x), z XOR g(x)>. Self-inverse.
void apply_extended_oracle(StateVector& v, const OracleSpec& spec);

// |x,y,z> -> |x, y, z XOR g(x)>: re-running the trace computation to
// XOR it back out of z, the backward stage of the reversible engine in
// register form. Self-inverse.
void apply_trace_uncompute(StateVector& v, const OracleSpec& spec);

enum class DiffusionScope { X, XZ };

// Inversion about the mean, blockwise: over the x amplitudes for each
// fixed (y,z), or over the joint (x,z) block for each fixed y.
void diffusion(StateVector& v, DiffusionScope scope);

// floor((pi/4) * sqrt(N/M)) rotations of the standard Grover geometry.
int optimal_iterations(uint64_t n_states, uint64_t n_solutions);

// Probability mass on basis states whose x register satisfies f.
double success_probability(const StateVector& v, const OracleSpec& spec);

enum class GroverMode { Uncompute, Joint };

struct GroverIteration {
    int k = 0;                        // iterations completed
    double success = 0.0;
    uint64_t oracle_calls = 0;        // k * depth, the per-iterate cost model
};

struct Measurement {
    uint64_t x = 0;
    uint64_t y = 0;
    uint64_t z = 0;
    std::string state;                // decoded x, empty for unassigned codes
    uint64_t count = 0;
};

struct GroverRun {
    GroverMode mode = GroverMode::Uncompute;
    int iterations = 0;
    uint64_t marked = 0;              // solution count among the 2^n codes
    std::vector<GroverIteration> history;  // k = 0 .. iterations
    StateVector final_state;
    std::vector<Measurement> measurements; // aggregated shot counts, descending
};

// Runs k Grover iterates from the prepared superposition. Uncompute
// mode: oracle, trace uncompute, diffusion over x. Joint mode: oracle,
// diffusion over (x,z). Success probability is recorded before the
// first iterate and after each one; shots are sampled from the final
// state with the seeded generator.
GroverRun grover_search(const OracleSpec& spec, GroverMode mode, int iterations, uint64_t seed,
                        uint64_t shots = 0);

// Iteration count for "auto": optimal_iterations over the mode's search
// space (2^n, or 2^(n+p) in joint mode).
int auto_iterations(const OracleSpec& spec, GroverMode mode);

}  // namespace qps
