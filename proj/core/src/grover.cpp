#include "qps/grover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <set>

namespace qps {

uint64_t StateTable::code_of(const std::string& state) const {
    auto found = codes.find(state);
    if (found == codes.end())
        throw EncodingOverflowError("state '" + state + "' has no code");
    return found->second;
}

const std::string& StateTable::state_at(uint64_t code) const {
    if (!assigned(code))
        throw DecodeFailureError("state code " + std::to_string(code) + " is unassigned");
    return states[code];
}

StateTable make_state_table(const std::vector<std::string>& states) {
    StateTable table;
    table.states = states;
    for (size_t i = 0; i < states.size(); ++i)
        if (!table.codes.emplace(states[i], i).second)
            throw Error("state '" + states[i] + "' listed twice");
    return table;
}

std::vector<std::string> expand_initial_states(const ProductionSystem& system, int depth) {
    std::vector<std::string> result = system.initials;
    std::set<std::string> seen(result.begin(), result.end());
    std::deque<std::pair<std::string, int>> frontier;
    for (const std::string& s : result) frontier.emplace_back(s, 0);
    while (!frontier.empty()) {
        auto [state, dist] = frontier.front();
        frontier.pop_front();
        if (dist >= depth) continue;
        for (int id : match_rules(system, state)) {
            std::string next = apply_rule(state, system.rule(id));
            if (!seen.insert(next).second) continue;
            result.push_back(next);
            frontier.emplace_back(next, dist + 1);
        }
    }
    return result;
}

int OracleSpec::classical_f(uint64_t x) const {
    if (!states.assigned(x))
        throw DecodeFailureError("state code " + std::to_string(x) + " is unassigned");
    return f_table[x];
}

uint64_t OracleSpec::classical_g(uint64_t x) const {
    if (!states.assigned(x))
        throw DecodeFailureError("state code " + std::to_string(x) + " is unassigned");
    return g_table[x];
}

OracleSpec make_oracle_spec(const ProductionSystem& system, int depth) {
    if (depth < 1) throw Error("oracle depth must be at least 1");
    OracleSpec spec;
    spec.system = system;
    spec.depth = depth;
    spec.states = make_state_table(system.initials);
    spec.encoding = compute_encoding(system);
    spec.slot_bits = spec.encoding.trace_slot_bits();
    spec.layout.n = ceil_log2(spec.states.states.size());
    spec.layout.p = depth * spec.slot_bits;
    if (spec.layout.total_bits() > kMaxRegisterBits)
        throw TooLargeError("oracle needs " + std::to_string(spec.layout.total_bits()) +
                            " register bits, guard is " + std::to_string(kMaxRegisterBits));

    uint64_t x_codes = uint64_t{1} << spec.layout.n;
    spec.f_table.assign(x_codes, 0);
    spec.g_table.assign(x_codes, 0);
    for (uint64_t x = 0; x < spec.states.states.size(); ++x) {
        const std::string& state = spec.states.states[x];
        if (system.is_goal(state)) {
            spec.f_table[x] = 1;  // found with zero firings, trace stays all-zero
            continue;
        }
        Trace trace = run_forward(system, state, static_cast<size_t>(depth));
        spec.f_table[x] = system.is_goal(trace.final_memory) ? 1 : 0;
        std::vector<int> fired = trace.fired_sequence();
        uint64_t g = 0;
        for (size_t j = 0; j < fired.size(); ++j)
            g |= spec.encoding.trace_code(fired[j])
                 << (static_cast<uint64_t>(depth - 1 - static_cast<int>(j)) * spec.slot_bits);
        spec.g_table[x] = g;
    }
    return spec;
}

StateVector prepare_initial_superposition(const std::vector<std::string>& initial_states,
                                          const OracleSpec& spec) {
    if (initial_states.empty()) throw Error("initial state set is empty");
    if (std::set<std::string>(initial_states.begin(), initial_states.end()).size() !=
        initial_states.size())
        throw Error("initial state set has duplicates");
    StateVector v = make_zero_state(spec.layout);
    double a = 1.0 / std::sqrt(2.0 * static_cast<double>(initial_states.size()));
    for (const std::string& state : initial_states) {
        uint64_t x = spec.states.code_of(state);
        v.amplitudes[spec.layout.index(x, 0, 0)] = a;
        v.amplitudes[spec.layout.index(x, 1, 0)] = -a;
    }
    return v;
}

namespace {

void apply_register_xor(StateVector& v, const OracleSpec& spec, bool flip_y) {
    if (v.layout != spec.layout)
        throw DimensionMismatchError("state layout does not match the oracle");
    const RegisterLayout& layout = v.layout;
    uint64_t y_values = 2, z_values = uint64_t{1} << layout.p;
    for (uint64_t x = 0; x < (uint64_t{1} << layout.n); ++x) {
        uint64_t f = flip_y ? spec.f_table[x] : 0;
        uint64_t g = spec.g_table[x];
        if (f == 0 && g == 0) continue;
        for (uint64_t y = 0; y < y_values; ++y) {
            for (uint64_t z = 0; z < z_values; ++z) {
                uint64_t from = layout.index(x, y, z);
                uint64_t to = layout.index(x, y ^ f, z ^ g);
                if (to > from) std::swap(v.amplitudes[from], v.amplitudes[to]);
            }
        }
    }
}

}  // namespace

void apply_extended_oracle(StateVector& v, const OracleSpec& spec) {
    apply_register_xor(v, spec, true);
}

void apply_trace_uncompute(StateVector& v, const OracleSpec& spec) {
    apply_register_xor(v, spec, false);
}

void diffusion(StateVector& v, DiffusionScope scope) {
    const RegisterLayout& layout = v.layout;
    uint64_t x_values = uint64_t{1} << layout.n;
    uint64_t z_values = uint64_t{1} << layout.p;
    if (scope == DiffusionScope::X) {
        for (uint64_t y = 0; y < 2; ++y) {
            for (uint64_t z = 0; z < z_values; ++z) {
                std::complex<double> mean = 0.0;
                for (uint64_t x = 0; x < x_values; ++x) mean += v.amplitudes[layout.index(x, y, z)];
                mean /= static_cast<double>(x_values);
                for (uint64_t x = 0; x < x_values; ++x) {
                    std::complex<double>& a = v.amplitudes[layout.index(x, y, z)];
                    a = 2.0 * mean - a;
                }
            }
        }
        return;
    }
    for (uint64_t y = 0; y < 2; ++y) {
        std::complex<double> mean = 0.0;
        for (uint64_t x = 0; x < x_values; ++x)
            for (uint64_t z = 0; z < z_values; ++z) mean += v.amplitudes[layout.index(x, y, z)];
        mean /= static_cast<double>(x_values * z_values);
        for (uint64_t x = 0; x < x_values; ++x) {
            for (uint64_t z = 0; z < z_values; ++z) {
                std::complex<double>& a = v.amplitudes[layout.index(x, y, z)];
                a = 2.0 * mean - a;
            }
        }
    }
}

int optimal_iterations(uint64_t n_states, uint64_t n_solutions) {
    if (n_solutions < 1 || n_solutions > n_states)
        throw Error("solution count must lie in [1, state count]");
    double ratio = static_cast<double>(n_states) / static_cast<double>(n_solutions);
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

double success_probability(const StateVector& v, const OracleSpec& spec) {
    double mass = 0.0;
    for (uint64_t i = 0; i < v.amplitudes.size(); ++i)
        if (spec.f_table[v.layout.x_of(i)]) mass += std::norm(v.amplitudes[i]);
    return mass;
}

int auto_iterations(const OracleSpec& spec, GroverMode mode) {
    uint64_t marked = 0;
    for (uint8_t f : spec.f_table) marked += f;
    if (marked == 0) throw Error("no state satisfies the goal test; nothing to amplify");
    int bits = mode == GroverMode::Uncompute ? spec.layout.n : spec.layout.n + spec.layout.p;
    return optimal_iterations(uint64_t{1} << bits, marked);
}

GroverRun grover_search(const OracleSpec& spec, GroverMode mode, int iterations, uint64_t seed,
                        uint64_t shots) {
    GroverRun run;
    run.mode = mode;
    run.iterations = iterations;
    for (uint8_t f : spec.f_table) run.marked += f;

    StateVector v = prepare_initial_superposition(spec.system.initials, spec);
    run.history.push_back({0, success_probability(v, spec), 0});
    for (int k = 1; k <= iterations; ++k) {
        apply_extended_oracle(v, spec);
        if (mode == GroverMode::Uncompute) {
            apply_trace_uncompute(v, spec);
            diffusion(v, DiffusionScope::X);
        } else {
            diffusion(v, DiffusionScope::XZ);
        }
        run.history.push_back({k, success_probability(v, spec),
                               static_cast<uint64_t>(k) * static_cast<uint64_t>(spec.depth)});
    }

    if (shots > 0) {
        std::mt19937_64 rng(seed);
        std::map<uint64_t, uint64_t> counts;
        for (uint64_t shot = 0; shot < shots; ++shot) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            double cumulative = 0.0;
            uint64_t picked = v.amplitudes.size() - 1;
            for (uint64_t i = 0; i < v.amplitudes.size(); ++i) {
                cumulative += std::norm(v.amplitudes[i]);
                if (u < cumulative) {
                    picked = i;
                    break;
                }
            }
            ++counts[picked];
        }
        for (const auto& [index, count] : counts) {
            Measurement m;
            m.x = v.layout.x_of(index);
            m.y = v.layout.y_of(index);
            m.z = v.layout.z_of(index);
            if (spec.states.assigned(m.x)) m.state = spec.states.state_at(m.x);
            m.count = count;
            run.measurements.push_back(m);
        }
        std::stable_sort(run.measurements.begin(), run.measurements.end(),
                         [](const Measurement& a, const Measurement& b) {
                             return a.count > b.count;
                         });
    }

    run.final_state = std::move(v);
    return run;
}

}  // namespace qps
