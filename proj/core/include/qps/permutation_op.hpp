#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qps/encoding.hpp"
#include "qps/rules.hpp"

namespace qps {

// One row of the symbol-level transition table: what happens when the
// working memory holds the symbol. rule_id 0 is the filled-in row for a
// symbol no rule rewrites: the symbol stays and the computation halts.
struct SymbolStep {
    int rule_id = 0;
    char gamma_prime = '\0';
    bool halt = false;

    bool operator==(const SymbolStep&) const = default;
};

// steps[code] lists the transitions for the symbol with that code. The
// operator build requires exactly one step per symbol; keeping a list
// here lets a multivalued table be represented, handed over, and
// rejected with a precise error instead of silently truncated.
struct SymbolTransitionTable {
    std::vector<std::vector<SymbolStep>> steps;
};

// Reads the single-symbol transitions off the rule set: for each symbol,
// the rules whose precondition is exactly that one symbol. Rules with
// longer preconditions do not participate at this level. A matched
// rule's action must be a single symbol (Error otherwise); the halt
// flag mirrors goal membership of the resulting one-symbol state.
SymbolTransitionTable derive_symbol_transitions(const ProductionSystem& system);

// The operator as a basis-index permutation: map[lambda] = omega, i.e.
// column lambda of the 0/1 matrix has its 1 in row omega.
struct PermutationOperator {
    Encoding encoding;
    std::vector<uint64_t> map;

    uint64_t size() const { return map.size(); }
};

// Walks every index: slices gamma|b0|b1|b2, looks up the symbol's
// transition, and XORs the encoded (rule, result, decision) into the
// b-fields with gamma carried through. Indices whose gamma bits decode
// to no symbol map to themselves, keeping the permutation total.
// NotDeterministic if any symbol has zero or several steps.
PermutationOperator build_operator(const Encoding& enc, const SymbolTransitionTable& table);
PermutationOperator build_operator(const ProductionSystem& system);

struct BijectionCheck {
    bool bijective = true;
    std::optional<std::pair<uint64_t, uint64_t>> collision;  // two inputs, same image
};

BijectionCheck verify_bijection(const PermutationOperator& op);

// Amplitude at omega = input amplitude at lambda, for map[lambda] = omega.
std::vector<std::complex<double>> apply(const PermutationOperator& op,
                                        const std::vector<std::complex<double>>& v);

PermutationOperator identity_operator(const Encoding& enc);
// first applied, then second (composition as index chasing).
PermutationOperator compose(const PermutationOperator& first, const PermutationOperator& second);
PermutationOperator power(const PermutationOperator& op, uint64_t d);
PermutationOperator inverse(const PermutationOperator& op);

// Dense 0/1 matrix, rows as vectors; guarded to 2^12 (TooLarge beyond).
inline constexpr uint64_t kDenseExportLimit = uint64_t{1} << 12;
std::vector<std::vector<int>> dense_matrix(const PermutationOperator& op);

}  // namespace qps
