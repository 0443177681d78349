// Command-line front end: parse a rule file, run one of the engines,
// write the result as CSV or JSON lines to stdout or --out.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qps/formats.hpp"
#include "qps/grover.hpp"
#include "qps/perf_model.hpp"
#include "qps/permutation_op.hpp"
#include "qps/probabilistic.hpp"
#include "qps/reversible.hpp"
#include "qps/system_file.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qps::Error("cannot open output file: " + out_path);
    out << text;
}

// Memory strings given on the command line bypass file validation, so
// they get the same alphabet check here.
void require_over_alphabet(const qps::ProductionSystem& system, const std::string& memory) {
    for (char c : memory)
        if (system.alphabet.find(c) == std::string::npos)
            throw qps::Error("memory symbol '" + std::string(1, c) +
                             "' is not in the alphabet");
}

std::string pick_initial(const qps::ProductionSystem& system, const std::string& override_str) {
    if (override_str.empty()) return system.initial();
    require_over_alphabet(system, override_str);
    return override_str;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

std::string describe_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::string out;
    for (const auto& [a, b] : pairs) {
        out += "  overlap: " + qps::rule_label(a) + " and " + qps::rule_label(b) + "\n";
    }
    return out;
}

int cmd_validate(const std::string& input, const std::string& out_path) {
    qps::SystemFile file = qps::load_system(input);
    const qps::ProductionSystem& system = file.system;
    qps::PropertyCheck det = qps::check_deterministic(system);
    qps::PropertyCheck rev = qps::check_reversible(system);
    qps::Encoding enc = qps::compute_encoding(system);

    std::string report;
    report += "alphabet: " + system.alphabet + "\n";
    report += "rules: " + std::to_string(system.rules.size()) + "\n";
    report += "initial states: " + std::to_string(system.initials.size()) + "\n";
    report += "goal states: " + std::to_string(system.goals.size()) + "\n";
    report += "deterministic: " + yes_no(det.holds) + "\n";
    report += describe_pairs(det.conflicts);
    report += "reversible: " + yes_no(rev.holds) + "\n";
    report += describe_pairs(rev.conflicts);
    report += "alpha: " + std::to_string(enc.alpha) + "\n";
    report += "beta: " + std::to_string(enc.beta) + "\n";
    report += "delta: " + std::to_string(enc.delta) + "\n";
    report += "operator bits: " + std::to_string(enc.operator_bits()) + "\n";
    report += "operator size: " + std::to_string(enc.operator_size()) + "\n";
    if (file.control) {
        qps::NormalizationReport norm = qps::validate_normalization(*file.control);
        report += "control: present\n";
        report += "control normalized: " + yes_no(norm.normalized) + "\n";
    }
    emit(report, out_path);
    return 0;
}

int cmd_run(const std::string& input, const std::string& out_path, const std::string& initial,
            uint64_t seed, int step_limit) {
    qps::SystemFile file = qps::load_system(input);
    std::string start = pick_initial(file.system, initial);
    qps::Trace trace = file.control
                           ? qps::sample_run(file.system, *file.control, start, seed, step_limit)
                           : qps::run_forward(file.system, start, step_limit);
    emit(qps::write_trace_csv(trace.steps), out_path);
    return 0;
}

int cmd_reverse(const std::string& input, const std::string& out_path,
                const std::string& initial, int step_limit) {
    qps::SystemFile file = qps::load_system(input);
    std::string start = pick_initial(file.system, initial);
    qps::ReversibleRun run = qps::run_reversible(file.system, start, step_limit, true);
    emit(qps::write_reversible_csv(run.rows), out_path);
    return 0;
}

int cmd_tree(const std::string& input, const std::string& out_path, const std::string& initial,
             int depth) {
    qps::SystemFile file = qps::load_system(input);
    std::string start = pick_initial(file.system, initial);
    qps::StochasticControl control =
        file.control ? *file.control : qps::derive_control(file.system);
    qps::ComputationTree tree = qps::expand_tree(file.system, control, start, depth);
    emit(qps::write_tree_csv(tree), out_path);
    return 0;
}

int cmd_build_op(const std::string& input, const std::string& out_path, bool dense) {
    qps::SystemFile file = qps::load_system(input);
    qps::PermutationOperator op = qps::build_operator(file.system);
    qps::BijectionCheck check = qps::verify_bijection(op);
    if (!check.bijective)
        throw qps::Error("constructed operator is not a bijection");
    emit(dense ? qps::write_operator_dense(op) : qps::write_operator_map(op), out_path);
    return 0;
}

int cmd_grover(const std::string& input, const std::string& out_path, int depth,
               const std::string& mode_name, int iterations, bool auto_iterations,
               uint64_t seed, uint64_t shots, bool expand_singleton,
               const std::string& amplitudes_path) {
    qps::SystemFile file = qps::load_system(input);
    qps::ProductionSystem system = file.system;
    if (expand_singleton && system.initials.size() == 1)
        system.initials = qps::expand_initial_states(system, 1);

    qps::OracleSpec spec = qps::make_oracle_spec(system, depth);
    qps::GroverMode mode =
        mode_name == "joint" ? qps::GroverMode::Joint : qps::GroverMode::Uncompute;
    int k = auto_iterations ? qps::auto_iterations(spec, mode) : iterations;
    qps::GroverRun run = qps::grover_search(spec, mode, k, seed, shots);
    emit(qps::write_grover_jsonl(qps::make_report(spec, run, seed, shots)), out_path);
    if (!amplitudes_path.empty())
        emit(qps::write_amplitudes_csv(run.final_state, spec), amplitudes_path);
    return 0;
}

int cmd_perf(const std::string& out_path, uint64_t si_max, int depth) {
    std::vector<qps::SurfaceRow> rows = qps::ratio_surface(si_max, depth);
    emit(qps::write_surface_csv(rows), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rule-system engines: forward, reversible, probabilistic, and quantum search"};
    app.require_subcommand(1);

    std::string input, out_path, initial;
    uint64_t seed = 0;
    int step_limit = 10000;

    auto add_shared = [&](CLI::App* cmd, bool needs_input) {
        auto* opt = cmd->add_option("--input", input, "rule system file");
        if (needs_input) opt->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out_path, "output file (default stdout)");
        return cmd;
    };

    CLI::App* validate = add_shared(app.add_subcommand("validate", "check a rule file"), true);

    CLI::App* run = add_shared(app.add_subcommand("run", "forward execution trace"), true);
    run->add_option("--initial", initial, "starting memory (default: file's first initial)");
    run->add_option("--seed", seed, "sampling seed for stochastic control");
    run->add_option("--step-limit", step_limit, "firing budget");

    CLI::App* reverse =
        add_shared(app.add_subcommand("reverse", "three-tape reversible run log"), true);
    reverse->add_option("--initial", initial, "starting memory");
    reverse->add_option("--step-limit", step_limit, "firing budget");

    int tree_depth = 3;
    CLI::App* tree = add_shared(app.add_subcommand("tree", "computation tree expansion"), true);
    tree->add_option("--initial", initial, "root memory");
    tree->add_option("--depth", tree_depth, "expansion depth");

    bool dense = false;
    CLI::App* build_op =
        add_shared(app.add_subcommand("build-op", "permutation operator export"), true);
    build_op->add_flag("--dense", dense, "emit the 0/1 matrix instead of the index map");

    int grover_depth = 1;
    std::string mode_name = "uncompute";
    int iterations = -1;
    bool auto_iters = false;
    uint64_t shots = 0;
    bool expand_singleton = false;
    std::string amplitudes_path;
    CLI::App* grover =
        add_shared(app.add_subcommand("grover", "amplitude-amplification search"), true);
    grover->add_option("--depth", grover_depth, "forward firings per oracle call");
    grover->add_option("--mode", mode_name, "uncompute or joint")
        ->check(CLI::IsMember({"uncompute", "joint"}));
    auto* iter_opt = grover->add_option("--iterations", iterations, "amplification rounds");
    grover->add_flag("--auto", auto_iters, "use the closed-form optimal round count")
        ->excludes(iter_opt);
    grover->add_option("--seed", seed, "measurement sampling seed");
    grover->add_option("--shots", shots, "number of simulated measurements");
    grover->add_flag("--expand-singleton", expand_singleton,
                     "widen a single initial state to its depth-1 successors");
    grover->add_option("--amplitudes", amplitudes_path, "also dump the final state as CSV");

    uint64_t si_max = 8192;
    int perf_depth = 1;
    CLI::App* perf = add_shared(app.add_subcommand("perf", "iteration-count surface"), false);
    perf->add_option("--si-max", si_max, "largest classical space size");
    perf->add_option("--depth", perf_depth, "rule firings per candidate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(input, out_path);
        if (run->parsed()) return cmd_run(input, out_path, initial, seed, step_limit);
        if (reverse->parsed()) return cmd_reverse(input, out_path, initial, step_limit);
        if (tree->parsed()) return cmd_tree(input, out_path, initial, tree_depth);
        if (build_op->parsed()) return cmd_build_op(input, out_path, dense);
        if (grover->parsed())
            return cmd_grover(input, out_path, grover_depth, mode_name, iterations,
                              auto_iters || iterations < 0, seed, shots, expand_singleton,
                              amplitudes_path);
        if (perf->parsed()) return cmd_perf(out_path, si_max, perf_depth);
    } catch (const qps::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
