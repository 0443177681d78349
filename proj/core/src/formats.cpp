#include "qps/formats.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace qps {

namespace {

std::vector<std::string> split(const std::string& text, char separator) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == separator) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> row_fields(const std::string& line, size_t expected, int line_no) {
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != expected)
        throw ParseError(line_no, "expected " + std::to_string(expected) + " fields, got " +
                                      std::to_string(fields.size()));
    return fields;
}

int64_t parse_integer(const std::string& token, int line_no) {
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, "expected an integer, got '" + token + "'");
    return value;
}

uint64_t parse_unsigned(const std::string& token, int line_no) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, "expected an unsigned integer, got '" + token + "'");
    return value;
}

// "R7" -> 7; empty -> absent.
std::optional<int> parse_rule_token(const std::string& token, int line_no) {
    if (token.empty()) return std::nullopt;
    if (token.size() < 2 || token[0] != 'R')
        throw ParseError(line_no, "expected a rule token, got '" + token + "'");
    return static_cast<int>(parse_integer(token.substr(1), line_no));
}

std::string join_rule_ids(const std::vector<int>& ids) {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ';';
        out += rule_label(ids[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

double parse_double(const std::string& token) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw Error("expected a number, got '" + token + "'");
    return value;
}

std::string write_trace_csv(const std::vector<TraceStep>& steps) {
    std::string out = "iteration,memory,conflict_set,fired,decision\n";
    for (const TraceStep& step : steps) {
        out += std::to_string(step.iteration);
        out += ',';
        out += step.memory;
        out += ',';
        out += join_rule_ids(step.conflict_set);
        out += ',';
        if (step.fired) out += rule_label(*step.fired);
        out += ',';
        out += step.decision == Decision::Halt ? "halt" : "continue";
        out += '\n';
    }
    return out;
}

std::vector<TraceStep> parse_trace_csv(const std::string& text) {
    std::vector<std::string> lines = csv_lines(text);
    if (lines.empty() || lines[0] != "iteration,memory,conflict_set,fired,decision")
        throw ParseError(1, "missing trace header");
    std::vector<TraceStep> steps;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 5, line_no);
        TraceStep step;
        step.iteration = static_cast<int>(parse_integer(fields[0], line_no));
        step.memory = fields[1];
        if (!fields[2].empty())
            for (const std::string& token : split(fields[2], ';'))
                step.conflict_set.push_back(*parse_rule_token(token, line_no));
        step.fired = parse_rule_token(fields[3], line_no);
        if (fields[4] == "halt") step.decision = Decision::Halt;
        else if (fields[4] == "continue") step.decision = Decision::Continue;
        else throw ParseError(line_no, "expected 'continue' or 'halt', got '" + fields[4] + "'");
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string render_tape(const Tape& tape) {
    size_t count = std::max(tape.all_blank() ? 0 : tape.last_written() + 1, tape.head + 1);
    std::string out;
    for (size_t i = 0; i < count; ++i) {
        if (i) out += ';';
        std::optional<int> cell = tape.at(i);
        out += cell ? rule_label(*cell) : "_";
    }
    return out;
}

namespace {

Tape parse_tape(const std::string& rendered, size_t head, int line_no) {
    Tape tape;
    tape.head = head;
    for (const std::string& token : split(rendered, ';')) {
        if (token == "_") tape.cells.push_back(std::nullopt);
        else tape.cells.push_back(*parse_rule_token(token, line_no));
    }
    return tape;
}

}  // namespace

std::string write_reversible_csv(const std::vector<ReversibleLogRow>& rows) {
    std::string out = "iteration,memory,rule,history,history_head,output,output_head\n";
    for (const ReversibleLogRow& row : rows) {
        out += std::to_string(row.iteration);
        out += ',';
        out += row.memory;
        out += ',';
        out += row.rule;
        out += ',';
        out += render_tape(row.history);
        out += ',';
        out += std::to_string(row.history.head);
        out += ',';
        out += render_tape(row.output);
        out += ',';
        out += std::to_string(row.output.head);
        out += '\n';
    }
    return out;
}

std::vector<ReversibleLogRow> parse_reversible_csv(const std::string& text) {
    std::vector<std::string> lines = csv_lines(text);
    if (lines.empty() ||
        lines[0] != "iteration,memory,rule,history,history_head,output,output_head")
        throw ParseError(1, "missing run-log header");
    std::vector<ReversibleLogRow> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 7, line_no);
        ReversibleLogRow row;
        row.iteration = static_cast<int>(parse_integer(fields[0], line_no));
        row.memory = fields[1];
        row.rule = fields[2];
        row.history = parse_tape(fields[3], parse_unsigned(fields[4], line_no), line_no);
        row.output = parse_tape(fields[5], parse_unsigned(fields[6], line_no), line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string write_tree_csv(const ComputationTree& tree) {
    std::string out = "node_id,parent_id,rule,state,depth,path_probability\n";
    for (const TreeNode& node : tree.nodes) {
        out += std::to_string(node.id);
        out += ',';
        if (node.parent >= 0) out += std::to_string(node.parent);
        out += ',';
        if (node.rule) out += rule_label(*node.rule);
        out += ',';
        out += node.state;
        out += ',';
        out += std::to_string(node.depth);
        out += ',';
        out += format_double(node.path_probability);
        out += '\n';
    }
    return out;
}

ComputationTree parse_tree_csv(const std::string& text) {
    std::vector<std::string> lines = csv_lines(text);
    if (lines.empty() || lines[0] != "node_id,parent_id,rule,state,depth,path_probability")
        throw ParseError(1, "missing tree header");
    ComputationTree tree;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 6, line_no);
        TreeNode node;
        node.id = static_cast<int>(parse_integer(fields[0], line_no));
        node.parent = fields[1].empty() ? -1
                                        : static_cast<int>(parse_integer(fields[1], line_no));
        node.rule = parse_rule_token(fields[2], line_no);
        node.state = fields[3];
        node.depth = static_cast<int>(parse_integer(fields[4], line_no));
        node.path_probability = parse_double(fields[5]);
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

std::string write_operator_map(const PermutationOperator& op) {
    std::string out;
    out += "# alpha: " + std::to_string(op.encoding.alpha) + '\n';
    out += "# beta: " + std::to_string(op.encoding.beta) + '\n';
    out += "# delta: " + std::to_string(op.encoding.delta) + '\n';
    out += "# symbols: " + op.encoding.symbols + '\n';
    out += "# rules: " + std::to_string(op.encoding.rule_count) + '\n';
    out += "lambda,omega\n";
    for (uint64_t lambda = 0; lambda < op.size(); ++lambda)
        out += std::to_string(lambda) + ',' + std::to_string(op.map[lambda]) + '\n';
    return out;
}

PermutationOperator parse_operator_map(const std::string& text) {
    PermutationOperator op;
    std::vector<std::string> lines = csv_lines(text);
    size_t i = 0;
    for (; i < lines.size() && lines[i].starts_with("#"); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::string line = lines[i].substr(1);
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        key.erase(0, key.find_first_not_of(' '));
        std::string value = line.substr(colon + 1);
        value.erase(0, value.find_first_not_of(' '));
        if (key == "alpha") op.encoding.alpha = static_cast<int>(parse_integer(value, line_no));
        else if (key == "beta") op.encoding.beta = static_cast<int>(parse_integer(value, line_no));
        else if (key == "delta") op.encoding.delta = static_cast<int>(parse_integer(value, line_no));
        else if (key == "symbols") op.encoding.symbols = value;
        else if (key == "rules") op.encoding.rule_count = static_cast<int>(parse_integer(value, line_no));
    }
    if (i >= lines.size() || lines[i] != "lambda,omega")
        throw ParseError(static_cast<int>(i) + 1, "missing lambda,omega header");
    op.map.resize(op.encoding.operator_size());
    size_t seen = 0;
    for (++i; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 2, line_no);
        uint64_t lambda = parse_unsigned(fields[0], line_no);
        uint64_t omega = parse_unsigned(fields[1], line_no);
        if (lambda >= op.map.size())
            throw ParseError(line_no, "index " + fields[0] + " outside the operator");
        op.map[lambda] = omega;
        ++seen;
    }
    if (seen != op.map.size())
        throw ParseError(static_cast<int>(lines.size()),
                         "operator rows incomplete: " + std::to_string(seen) + " of " +
                             std::to_string(op.map.size()));
    return op;
}

std::string write_operator_dense(const PermutationOperator& op) {
    std::vector<std::vector<int>> matrix = dense_matrix(op);
    std::string out;
    for (const std::vector<int>& row : matrix) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i] ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::vector<std::vector<int>> parse_dense_csv(const std::string& text) {
    std::vector<std::vector<int>> matrix;
    std::vector<std::string> lines = csv_lines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].starts_with("#")) continue;
        int line_no = static_cast<int>(i) + 1;
        std::vector<int> row;
        for (const std::string& token : split(lines[i], ','))
            row.push_back(static_cast<int>(parse_integer(token, line_no)));
        matrix.push_back(std::move(row));
    }
    return matrix;
}

std::string write_surface_csv(const std::vector<SurfaceRow>& rows) {
    std::string out = "s_i,m,C,Q,ratio\n";
    for (const SurfaceRow& row : rows) {
        out += std::to_string(row.s_i);
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += std::to_string(row.classical);
        out += ',';
        out += format_double(row.quantum);
        out += ',';
        out += format_double(row.ratio);
        out += '\n';
    }
    return out;
}

std::vector<SurfaceRow> parse_surface_csv(const std::string& text) {
    std::vector<std::string> lines = csv_lines(text);
    if (lines.empty() || lines[0] != "s_i,m,C,Q,ratio")
        throw ParseError(1, "missing surface header");
    std::vector<SurfaceRow> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 5, line_no);
        SurfaceRow row;
        row.s_i = parse_unsigned(fields[0], line_no);
        row.m = static_cast<int>(parse_integer(fields[1], line_no));
        row.classical = parse_unsigned(fields[2], line_no);
        row.quantum = parse_double(fields[3]);
        row.ratio = parse_double(fields[4]);
        rows.push_back(row);
    }
    return rows;
}

GroverReport make_report(const OracleSpec& spec, const GroverRun& run, uint64_t seed,
                         uint64_t shots) {
    GroverReport report;
    report.mode = run.mode == GroverMode::Uncompute ? "uncompute" : "joint";
    report.n = spec.layout.n;
    report.p = spec.layout.p;
    report.depth = spec.depth;
    report.iterations = run.iterations;
    report.initial_states = spec.states.states.size();
    report.marked = run.marked;
    report.seed = seed;
    report.shots = shots;
    report.history = run.history;
    report.measurements = run.measurements;
    return report;
}

std::string write_grover_jsonl(const GroverReport& report) {
    std::string out;
    nlohmann::json config{{"type", "config"},
                          {"mode", report.mode},
                          {"n", report.n},
                          {"p", report.p},
                          {"depth", report.depth},
                          {"iterations", report.iterations},
                          {"initial_states", report.initial_states},
                          {"marked", report.marked},
                          {"seed", report.seed},
                          {"shots", report.shots}};
    out += config.dump() + '\n';
    for (const GroverIteration& it : report.history) {
        nlohmann::json line{{"type", "iteration"},
                            {"k", it.k},
                            {"success_probability", it.success},
                            {"oracle_calls", it.oracle_calls}};
        out += line.dump() + '\n';
    }
    for (const Measurement& m : report.measurements) {
        nlohmann::json line{{"type", "measurement"}, {"x", m.x},         {"y", m.y},
                            {"z", m.z},              {"state", m.state}, {"count", m.count}};
        out += line.dump() + '\n';
    }
    return out;
}

GroverReport parse_grover_jsonl(const std::string& text) {
    GroverReport report;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    bool saw_config = false;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json value = nlohmann::json::parse(line, nullptr, false);
        if (value.is_discarded()) throw ParseError(line_no, "invalid JSON");
        try {
            std::string type = value.value("type", "");
            if (type == "config") {
                saw_config = true;
                report.mode = value.at("mode").get<std::string>();
                report.n = value.at("n").get<int>();
                report.p = value.at("p").get<int>();
                report.depth = value.at("depth").get<int>();
                report.iterations = value.at("iterations").get<int>();
                report.initial_states = value.at("initial_states").get<uint64_t>();
                report.marked = value.at("marked").get<uint64_t>();
                report.seed = value.at("seed").get<uint64_t>();
                report.shots = value.at("shots").get<uint64_t>();
            } else if (type == "iteration") {
                GroverIteration it;
                it.k = value.at("k").get<int>();
                it.success = value.at("success_probability").get<double>();
                it.oracle_calls = value.at("oracle_calls").get<uint64_t>();
                report.history.push_back(it);
            } else if (type == "measurement") {
                Measurement m;
                m.x = value.at("x").get<uint64_t>();
                m.y = value.at("y").get<uint64_t>();
                m.z = value.at("z").get<uint64_t>();
                m.state = value.at("state").get<std::string>();
                m.count = value.at("count").get<uint64_t>();
                report.measurements.push_back(std::move(m));
            } else {
                throw ParseError(line_no, "unknown record type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!saw_config) throw ParseError(line_no, "missing config record");
    return report;
}

std::string write_amplitudes_csv(const StateVector& v, const OracleSpec& spec) {
    std::string out = "index,x,state,y,z,re,im\n";
    for (uint64_t i = 0; i < v.amplitudes.size(); ++i) {
        uint64_t x = v.layout.x_of(i);
        out += std::to_string(i);
        out += ',';
        out += std::to_string(x);
        out += ',';
        if (spec.states.assigned(x)) out += spec.states.state_at(x);
        out += ',';
        out += std::to_string(v.layout.y_of(i));
        out += ',';
        out += std::to_string(v.layout.z_of(i));
        out += ',';
        out += format_double(v.amplitudes[i].real());
        out += ',';
        out += format_double(v.amplitudes[i].imag());
        out += '\n';
    }
    return out;
}

std::vector<AmplitudeRow> parse_amplitudes_csv(const std::string& text) {
    std::vector<std::string> lines = csv_lines(text);
    if (lines.empty() || lines[0] != "index,x,state,y,z,re,im")
        throw ParseError(1, "missing amplitude header");
    std::vector<AmplitudeRow> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::vector<std::string> fields = row_fields(lines[i], 7, line_no);
        AmplitudeRow row;
        row.index = parse_unsigned(fields[0], line_no);
        row.x = parse_unsigned(fields[1], line_no);
        row.state = fields[2];
        row.y = parse_unsigned(fields[3], line_no);
        row.z = parse_unsigned(fields[4], line_no);
        row.re = parse_double(fields[5]);
        row.im = parse_double(fields[6]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qps
