#include "qps/permutation_op.hpp"

#include <algorithm>

namespace qps {

SymbolTransitionTable derive_symbol_transitions(const ProductionSystem& system) {
    SymbolTransitionTable table;
    table.steps.resize(system.alphabet.size());
    for (size_t code = 0; code < system.alphabet.size(); ++code) {
        std::string symbol(1, system.alphabet[code]);
        for (const Production& rule : system.rules) {
            if (rule.precondition != symbol) continue;
            if (rule.action.size() != 1)
                throw Error(rule_label(rule.id) + " rewrites symbol '" + symbol +
                            "' to the string '" + rule.action +
                            "', which has no single-symbol code");
            table.steps[code].push_back(
                {rule.id, rule.action[0], system.is_goal(rule.action)});
        }
        if (table.steps[code].empty())
            table.steps[code].push_back({0, system.alphabet[code], true});
    }
    return table;
}

PermutationOperator build_operator(const ProductionSystem& system) {
    return build_operator(compute_encoding(system), derive_symbol_transitions(system));
}

PermutationOperator build_operator(const Encoding& enc, const SymbolTransitionTable& table) {
    if (table.steps.size() != enc.symbols.size())
        throw NotDeterministicError("transition table covers " +
                                    std::to_string(table.steps.size()) + " symbols, alphabet has " +
                                    std::to_string(enc.symbols.size()));
    for (size_t code = 0; code < table.steps.size(); ++code) {
        if (table.steps[code].size() == 1) continue;
        std::string symbol(1, enc.symbols[code]);
        if (table.steps[code].empty())
            throw NotDeterministicError("no transition for symbol '" + symbol + "'");
        throw NotDeterministicError("transition for symbol '" + symbol + "' is multivalued (" +
                                    std::to_string(table.steps[code].size()) + " steps)");
    }

    PermutationOperator op;
    op.encoding = enc;
    op.map.resize(enc.operator_size());
    for (uint64_t lambda = 0; lambda < op.map.size(); ++lambda) {
        BasisState in = slice_index(lambda, enc);
        std::optional<char> symbol = enc.symbol_at(in.gamma);
        if (!symbol || static_cast<size_t>(in.gamma) >= table.steps.size()) {
            op.map[lambda] = lambda;  // unassigned code: no dynamics added
            continue;
        }
        const SymbolStep& step = table.steps[in.gamma].front();
        uint32_t rule_bits = step.rule_id == 0 ? 0 : enc.rule_code(step.rule_id);
        BasisState out = in;
        out.b0 ^= rule_bits;
        out.b1 ^= static_cast<uint32_t>(enc.symbol_code(step.gamma_prime));
        out.b2 ^= step.halt ? 1u : 0u;
        op.map[lambda] = join_fields(out, enc);
    }
    return op;
}

BijectionCheck verify_bijection(const PermutationOperator& op) {
    BijectionCheck check;
    std::vector<uint64_t> source(op.size(), op.size());
    for (uint64_t lambda = 0; lambda < op.size(); ++lambda) {
        uint64_t omega = op.map[lambda];
        if (omega >= op.size() || source[omega] != op.size()) {
            check.bijective = false;
            check.collision = {omega < op.size() ? source[omega] : lambda, lambda};
            return check;
        }
        source[omega] = lambda;
    }
    return check;
}

std::vector<std::complex<double>> apply(const PermutationOperator& op,
                                        const std::vector<std::complex<double>>& v) {
    if (v.size() != op.size())
        throw DimensionMismatchError("vector has dimension " + std::to_string(v.size()) +
                                     ", operator " + std::to_string(op.size()));
    std::vector<std::complex<double>> out(v.size());
    for (uint64_t lambda = 0; lambda < op.size(); ++lambda) out[op.map[lambda]] = v[lambda];
    return out;
}

PermutationOperator identity_operator(const Encoding& enc) {
    PermutationOperator op;
    op.encoding = enc;
    op.map.resize(enc.operator_size());
    for (uint64_t i = 0; i < op.map.size(); ++i) op.map[i] = i;
    return op;
}

PermutationOperator compose(const PermutationOperator& first, const PermutationOperator& second) {
    if (first.size() != second.size())
        throw DimensionMismatchError("composing operators of different sizes");
    PermutationOperator out;
    out.encoding = first.encoding;
    out.map.resize(first.size());
    for (uint64_t lambda = 0; lambda < first.size(); ++lambda)
        out.map[lambda] = second.map[first.map[lambda]];
    return out;
}

PermutationOperator power(const PermutationOperator& op, uint64_t d) {
    PermutationOperator result = identity_operator(op.encoding);
    for (uint64_t i = 0; i < d; ++i) result = compose(result, op);
    return result;
}

PermutationOperator inverse(const PermutationOperator& op) {
    PermutationOperator out;
    out.encoding = op.encoding;
    out.map.resize(op.size());
    for (uint64_t lambda = 0; lambda < op.size(); ++lambda) out.map[op.map[lambda]] = lambda;
    return out;
}

std::vector<std::vector<int>> dense_matrix(const PermutationOperator& op) {
    if (op.size() > kDenseExportLimit)
        throw TooLargeError("dense form of a " + std::to_string(op.size()) +
                            "-dimensional operator exceeds the 2^12 guard");
    std::vector<std::vector<int>> matrix(op.size(), std::vector<int>(op.size(), 0));
    for (uint64_t lambda = 0; lambda < op.size(); ++lambda)
        matrix[op.map[lambda]][lambda] = 1;
    return matrix;
}

}  // namespace qps
