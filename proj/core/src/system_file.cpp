#include "qps/system_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace qps {

namespace {

std::string trim(const std::string& text) {
    size_t begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    size_t end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

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

int parse_int(const std::string& token, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected an integer, got '" + token + "'");
    return value;
}

double parse_probability(const std::string& token, int line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected a probability, got '" + token + "'");
    return value;
}

struct RawProbLine {
    int line = 0;
    std::string condition;
    std::vector<std::pair<int, double>> weights;
};

}  // namespace

SystemFile parse_system(const std::string& text) {
    SystemFile file;
    ProductionSystem& system = file.system;
    std::vector<RawProbLine> prob_lines;
    std::set<int> rule_ids;
    bool saw_alphabet = false, saw_initial = false, saw_goal = false, saw_order = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;

        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(line_no, "expected '<keyword>: ...'");
        std::string head = trim(line.substr(0, colon));
        std::string body = trim(line.substr(colon + 1));

        if (head == "alphabet") {
            if (saw_alphabet) throw ParseError(line_no, "alphabet declared twice");
            saw_alphabet = true;
            system.alphabet = body;
        } else if (head.rfind("rule", 0) == 0) {
            int id = parse_int(trim(head.substr(4)), line_no);
            if (!rule_ids.insert(id).second)
                throw ParseError(line_no, "rule " + std::to_string(id) + " declared twice");
            size_t arrow = body.find("->");
            if (arrow == std::string::npos)
                throw ParseError(line_no, "expected '<precondition> -> <action>'");
            Production rule;
            rule.id = id;
            rule.precondition = trim(body.substr(0, arrow));
            rule.action = trim(body.substr(arrow + 2));
            if (rule.precondition.empty() || rule.action.empty())
                throw ParseError(line_no, "rule " + std::to_string(id) + " has an empty side");
            system.rules.push_back(std::move(rule));
        } else if (head == "initial") {
            if (saw_initial) throw ParseError(line_no, "initial declared twice");
            saw_initial = true;
            for (const std::string& part : split(body, ','))
                system.initials.push_back(trim(part));
        } else if (head == "goal") {
            if (saw_goal) throw ParseError(line_no, "goal declared twice");
            saw_goal = true;
            for (const std::string& part : split(body, ','))
                system.goals.push_back(trim(part));
        } else if (head == "order") {
            if (saw_order) throw ParseError(line_no, "order declared twice");
            saw_order = true;
            system.strategy = ConflictStrategy::CustomOrdered;
            for (const std::string& part : split(body, ','))
                system.priority.push_back(parse_int(trim(part), line_no));
        } else if (head.rfind("prob", 0) == 0) {
            RawProbLine prob;
            prob.line = line_no;
            prob.condition = trim(head.substr(4));
            if (prob.condition.empty())
                throw ParseError(line_no, "prob line is missing its condition");
            std::set<int> ids_on_line;
            for (const std::string& part : split(body, ',')) {
                std::string entry = trim(part);
                size_t equals = entry.find('=');
                if (equals == std::string::npos)
                    throw ParseError(line_no, "expected '<rule-id>=<probability>'");
                int id = parse_int(trim(entry.substr(0, equals)), line_no);
                double p = parse_probability(trim(entry.substr(equals + 1)), line_no);
                if (!ids_on_line.insert(id).second)
                    throw ParseError(line_no,
                                     "rule " + std::to_string(id) + " weighted twice");
                prob.weights.emplace_back(id, p);
            }
            prob_lines.push_back(std::move(prob));
        } else {
            throw ParseError(line_no, "unknown declaration '" + head + "'");
        }
    }

    if (!saw_alphabet) throw ParseError(line_no, "missing alphabet declaration");
    if (system.rules.empty()) throw ParseError(line_no, "no rules declared");
    if (!saw_initial) throw ParseError(line_no, "missing initial declaration");
    if (!saw_goal) throw ParseError(line_no, "missing goal declaration");

    std::sort(system.rules.begin(), system.rules.end(),
              [](const Production& a, const Production& b) { return a.id < b.id; });
    validate(system);

    if (!prob_lines.empty()) {
        StochasticControl control;
        for (const RawProbLine& prob : prob_lines) {
            if (control.table.count(prob.condition))
                throw ParseError(prob.line,
                                 "condition '" + prob.condition + "' weighted twice");
            std::vector<ControlEntry> entries;
            for (const auto& [id, p] : prob.weights) {
                if (id < 1 || id > static_cast<int>(system.rules.size()))
                    throw ParseError(prob.line, "unknown rule id " + std::to_string(id));
                const Production& rule = system.rule(id);
                if (!find_leftmost(prob.condition, rule.precondition))
                    throw ParseError(prob.line, rule_label(id) + " does not match '" +
                                                    prob.condition + "'");
                std::string result = apply_rule(prob.condition, rule);
                entries.push_back({id, result, system.is_goal(result), p});
            }
            control.table.emplace(prob.condition, std::move(entries));
        }
        check_control(system, control);
        file.control = std::move(control);
    }
    return file;
}

SystemFile load_system(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_system(buffer.str());
}

}  // namespace qps
