// Acceptance gate: every shipped guarantee exercised end to end, one
// timed PASS/FAIL line each. The two golden-trace criteria drive the
// real command-line binary; the rest go through the library. Invoked
// as: acceptance <path-to-cli> <data-dir>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/encoding.hpp"
#include "qps/formats.hpp"
#include "qps/grover.hpp"
#include "qps/perf_model.hpp"
#include "qps/permutation_op.hpp"
#include "qps/reversible.hpp"
#include "qps/rules.hpp"
#include "qps/statevector.hpp"
#include "qps/system_file.hpp"

namespace {

std::string cli;
std::string data;
std::filesystem::path scratch;

#define REQUIRE(cond)                                                         \
    do {                                                                      \
        if (!(cond))                                                          \
            throw std::runtime_error(std::string(#cond) + " (line " +         \
                                     std::to_string(__LINE__) + ")");         \
    } while (0)

#define REQUIRE_NEAR(value, want, tol)                                        \
    do {                                                                      \
        double v_ = (value);                                                  \
        double w_ = (want);                                                   \
        if (!(std::abs(v_ - w_) <= (tol)))                                    \
            throw std::runtime_error(std::string(#value) + " = " +            \
                                     std::to_string(v_) + ", want " +         \
                                     std::to_string(w_) + " within " + #tol + \
                                     " (line " + std::to_string(__LINE__) +   \
                                     ")");                                    \
    } while (0)

int run_cli(const std::string& args) {
    std::string command = cli + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str()));
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

qps::ProductionSystem load(const std::string& name) {
    return qps::load_system(data + "/" + name).system;
}

// ---- criterion 1: forward run reproduces the golden sorting trace ----

const char* const kSortingMemories[] = {
    "edcba", "edcab", "edacb", "eadcb", "aedcb", "aedbc",
    "aebdc", "abedc", "abecd", "abced", "abcde",
};

void forward_golden_trace() {
    std::filesystem::path out = scratch / "trace.csv";
    REQUIRE(run_cli("run --input " + data + "/sorting.ps --out " + out.string()) == 0);
    std::vector<qps::TraceStep> steps = qps::parse_trace_csv(slurp(out));
    REQUIRE(steps.size() == 11);
    for (size_t i = 0; i < steps.size(); ++i)
        REQUIRE(steps[i].memory == kSortingMemories[i]);
    for (int i = 0; i < 10; ++i) {
        REQUIRE(steps[static_cast<size_t>(i)].fired.has_value());
        REQUIRE(*steps[static_cast<size_t>(i)].fired == i + 1);
    }
    REQUIRE(!steps.back().fired.has_value());
    REQUIRE(steps.back().decision == qps::Decision::Halt);
}

// ---- criterion 2: reversible run reproduces the golden 25-row log ----

struct GoldenLogRow {
    const char* memory;
    const char* rule;
};

const GoldenLogRow kReverseGolden[] = {
    {"edcba", "R1"},     {"edcab", "R2"},     {"edacb", "R3"},
    {"eadcb", "R4"},     {"aedcb", "R5"},     {"aedbc", "R6"},
    {"aebdc", "R7"},     {"abedc", "R8"},     {"abecd", "R9"},
    {"abced", "R10"},    {"abcde", ""},       {"abcde", ""},
    {"abcde", ""},       {"abcde", ""},       {"abcde", ""},
    {"abced", "R10^-1"}, {"abecd", "R9^-1"},  {"abedc", "R8^-1"},
    {"aebdc", "R7^-1"},  {"aedbc", "R6^-1"},  {"aedcb", "R5^-1"},
    {"eadcb", "R4^-1"},  {"edacb", "R3^-1"},  {"edcab", "R2^-1"},
    {"edcba", "R1^-1"},
};

void reverse_golden_log() {
    std::filesystem::path out = scratch / "reverse.csv";
    REQUIRE(run_cli("reverse --input " + data + "/sorting.ps --out " + out.string()) == 0);
    std::vector<qps::ReversibleLogRow> rows = qps::parse_reversible_csv(slurp(out));
    REQUIRE(rows.size() == 25);
    for (size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].memory == kReverseGolden[i].memory);
        REQUIRE(rows[i].rule == kReverseGolden[i].rule);
    }
    const qps::ReversibleLogRow& last = rows.back();
    REQUIRE(last.memory == "edcba");
    REQUIRE(last.history.all_blank());
    std::vector<int> output = last.output.values();
    REQUIRE(output.size() == 10);
    for (int i = 0; i < 10; ++i)
        REQUIRE(output[static_cast<size_t>(i)] == i + 1);
}

// ---- criterion 3: reversal restores every permutation ----

void reversibility_all_permutations() {
    qps::ProductionSystem system = load("sorting.ps");
    std::string memory = "abcde";
    int permutations = 0;
    do {
        qps::Trace forward = qps::run_forward(system, memory);
        REQUIRE(forward.final_memory == "abcde");
        qps::ReversibleRun run = qps::run_reversible(system, memory, 10000, true);
        REQUIRE(run.final_memory == memory);
        REQUIRE(run.output_rules == forward.fired_sequence());
        ++permutations;
    } while (std::next_permutation(memory.begin(), memory.end()));
    REQUIRE(permutations == 120);
}

// ---- criterion 4: operator construction ----

void operator_construction() {
    qps::PermutationOperator sorting_op = qps::build_operator(load("sorting.ps"));
    REQUIRE(sorting_op.size() == 2048);
    REQUIRE(qps::verify_bijection(sorting_op).bijective);
    for (uint64_t index = 0; index < sorting_op.size(); ++index) {
        qps::BasisState in = qps::slice_index(index, sorting_op.encoding);
        qps::BasisState mapped = qps::slice_index(sorting_op.map[index], sorting_op.encoding);
        REQUIRE(in.gamma == mapped.gamma);
    }

    qps::PermutationOperator flip_op = qps::build_operator(load("flip.ps"));
    REQUIRE(flip_op.size() == 16);
    REQUIRE(qps::verify_bijection(flip_op).bijective);

    // Independently enumerated table: symbol a fires rule 1 (code 0),
    // lands on b (code 1), halts; symbol b fires rule 2 (code 1), lands
    // on a (code 0), continues. XOR masks 0b0011 and 0b0100.
    for (uint64_t index = 0; index < 16; ++index) {
        uint64_t expected = (index >> 3) == 0 ? (index ^ 0b0011) : (index ^ 0b0100);
        REQUIRE(flip_op.map[index] == expected);
    }

    std::vector<std::vector<int>> m = qps::dense_matrix(flip_op);
    for (size_t i = 0; i < 16; ++i) {
        for (size_t j = 0; j < 16; ++j) {
            int dot = 0;
            for (size_t k = 0; k < 16; ++k) dot += m[i][k] * m[j][k];
            REQUIRE(dot == (i == j ? 1 : 0));
        }
    }

    // The 2048-wide matrix gets the quadratic form of the same check:
    // exactly one 1 per row and per column, placed at map[column].
    std::vector<std::vector<int>> big = qps::dense_matrix(sorting_op);
    std::vector<int> column_sums(big.size(), 0);
    for (size_t row = 0; row < big.size(); ++row) {
        int row_sum = 0;
        for (size_t col = 0; col < big.size(); ++col) {
            row_sum += big[row][col];
            column_sums[col] += big[row][col];
        }
        REQUIRE(row_sum == 1);
    }
    for (size_t col = 0; col < big.size(); ++col) {
        REQUIRE(column_sums[col] == 1);
        REQUIRE(big[sorting_op.map[col]][col] == 1);
    }
}

// ---- criterion 5: oracle amplitude flip against a minus-state y ----

void amplitude_flip() {
    qps::OracleSpec spec = qps::make_oracle_spec(load("marked2.ps"), 1);
    const qps::RegisterLayout& layout = spec.layout;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    for (uint64_t x = 0; x < (uint64_t{1} << layout.n); ++x) {
        qps::StateVector v = qps::make_zero_state(layout);
        v.amplitudes[layout.index(x, 0, 0)] = inv_sqrt2;
        v.amplitudes[layout.index(x, 1, 0)] = -inv_sqrt2;
        qps::apply_extended_oracle(v, spec);

        double sign = spec.f_table[x] ? -1.0 : 1.0;
        uint64_t g = spec.g_table[x];
        for (uint64_t index = 0; index < layout.dimension(); ++index) {
            std::complex<double> want = 0.0;
            if (layout.x_of(index) == x && layout.z_of(index) == g)
                want = (layout.y_of(index) == 0 ? sign : -sign) * inv_sqrt2;
            REQUIRE(std::abs(v.amplitudes[index] - want) <= 1e-12);
        }
    }
}

// ---- criterion 6: Grover closed form ----

double closed_form(uint64_t n_states, int k) {
    double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n_states)));
    double s = std::sin((2 * k + 1) * theta);
    return s * s;
}

qps::ProductionSystem swap12() {
    qps::ProductionSystem sys;
    sys.alphabet = "ab";
    sys.rules = {{1, "ab", "ba"}};
    for (uint64_t bits = 0; bits < 4096; ++bits) {
        std::string s(12, 'a');
        for (int i = 0; i < 12; ++i)
            if (bits & (uint64_t{1} << (11 - i))) s[i] = 'b';
        sys.initials.push_back(s);
    }
    sys.goals = {std::string(12, 'b')};
    return sys;
}

void grover_closed_form() {
    qps::OracleSpec spec8 = qps::make_oracle_spec(load("grover8.ps"), 1);
    qps::GroverRun run8 = qps::grover_search(spec8, qps::GroverMode::Uncompute, 2, 0);
    REQUIRE_NEAR(run8.history.back().success, 0.9453125, 1e-9);

    REQUIRE(qps::optimal_iterations(8, 1) == 2);
    REQUIRE(run8.history.size() == 3);
    REQUIRE(run8.history[0].success < run8.history[1].success);
    REQUIRE(run8.history[1].success < run8.history[2].success);

    qps::OracleSpec spec4 = qps::make_oracle_spec(load("grover4.ps"), 1);
    qps::GroverRun run4 = qps::grover_search(spec4, qps::GroverMode::Uncompute, 1, 0);
    REQUIRE_NEAR(run4.history.back().success, 1.0, 1e-12);

    // Largest covered register: 12 state bits + y + 3 trace bits.
    qps::OracleSpec wide = qps::make_oracle_spec(swap12(), 3);
    REQUIRE(wide.layout.total_bits() == 16);
    qps::GroverRun long_run = qps::grover_search(wide, qps::GroverMode::Uncompute, 50, 0);
    REQUIRE_NEAR(long_run.history.back().success, closed_form(4096, 50), 1e-9);
    REQUIRE_NEAR(long_run.history.back().success, 0.9999453461092628, 1e-9);
}

// ---- criterion 7: performance model ----

void performance_model() {
    REQUIRE(qps::ratio(4, 2) == 2.0);

    for (uint64_t s : {4u, 16u, 64u, 256u, 1024u, 4096u}) {
        int m = 2 * std::countr_zero(s);
        REQUIRE(qps::ratio(s, m) == 1.0);
    }

    qps::MBounds b8 = qps::bounds_for_m(8);
    REQUIRE(b8.low == 3);
    REQUIRE(b8.high == 6);
    qps::MBounds b1 = qps::bounds_for_m(1);
    REQUIRE(b1.low == 0);
    REQUIRE(b1.high == 0);
    qps::MBounds b8192 = qps::bounds_for_m(8192);
    REQUIRE(b8192.low == 13);
    REQUIRE(b8192.high == 26);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (uint64_t s : {5u, 64u, 1000u, 8192u})
        for (int m = 0; m < 30; ++m)
            REQUIRE_NEAR(qps::ratio(s, m + 1) / qps::ratio(s, m), inv_sqrt2, 1e-12);

    // Ladder plateaus: every s_i in (2^(k-1), 2^k] starts its m range
    // at the same k.
    std::vector<qps::SurfaceRow> surface = qps::ratio_surface(qps::kSurfaceMax, 1);
    REQUIRE(!surface.empty());
    std::vector<int> m_low(qps::kSurfaceMax + 1, -1);
    for (const qps::SurfaceRow& row : surface) {
        int& low = m_low[row.s_i];
        if (low < 0 || row.m < low) low = row.m;
    }
    REQUIRE(m_low[1] == 0);
    for (int k = 1; k <= 13; ++k) {
        uint64_t start = (uint64_t{1} << (k - 1)) + 1;
        uint64_t end = uint64_t{1} << k;
        for (uint64_t s = start; s <= end; ++s) REQUIRE(m_low[s] == k);
    }
}

// ---- criterion 8: hierarchical comparison ----

void hierarchical_comparison_values() {
    for (int n = 0; n <= 10; ++n) {
        double value = qps::hierarchical_comparison(n);
        REQUIRE(value == std::sqrt(std::ldexp(1.0, -(n + 1))));
        // The path-register width must cancel out of the quotient.
        for (int p : {0, 1, 8, 16}) {
            double with_p = std::sqrt(std::ldexp(1.0, p) / std::ldexp(1.0, n + p + 1));
            REQUIRE(value == with_p);
        }
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    void (*body)();
};

const Criterion kCriteria[] = {
    {1, "forward-golden-trace", 1.0, forward_golden_trace},
    {2, "reverse-golden-log", 1.0, reverse_golden_log},
    {3, "reversibility-all-permutations", 5.0, reversibility_all_permutations},
    {4, "operator-construction", 10.0, operator_construction},
    {5, "amplitude-flip", 5.0, amplitude_flip},
    {6, "grover-closed-form", 30.0, grover_closed_form},
    {7, "performance-model", 5.0, performance_model},
    {8, "hierarchical-comparison", 5.0, hierarchical_comparison_values},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli> <data-dir>\n";
        return 2;
    }
    cli = argv[1];
    data = argv[2];
    scratch = std::filesystem::temp_directory_path() /
              ("qps_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(scratch);

    int failed = 0;
    for (const Criterion& criterion : kCriteria) {
        auto start = std::chrono::steady_clock::now();
        std::string reason;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            reason = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (reason.empty() && elapsed > criterion.budget_seconds) {
            std::ostringstream over;
            over << "exceeded " << criterion.budget_seconds << "s budget";
            reason = over.str();
        }
        std::ostringstream line;
        line << (reason.empty() ? "PASS" : "FAIL") << "  " << criterion.id << "  "
             << criterion.name << "  " << std::fixed << std::setprecision(3) << elapsed
             << "s";
        if (!reason.empty()) {
            line << "  " << reason;
            ++failed;
        }
        std::cout << line.str() << "\n";
    }

    std::filesystem::remove_all(scratch);
    if (failed) {
        std::cerr << failed << " criterion(s) failed\n";
        return 1;
    }
    return 0;
}
