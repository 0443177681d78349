#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qps/rules.hpp"

namespace qps {

// Smallest k with 2^k >= count; 0 for count <= 1.
int ceil_log2(uint64_t count);

// Bit budget and code tables shared by the operator and trace layers.
//
// Two distinct rule-code spaces live here and must not be mixed:
//   - operator codes are 0-based (rule id i -> i-1) so |R| rules fill
//     the beta-bit field exactly;
//   - trace codes are 1-based (rule id i -> i) so an all-zero slot can
//     mean "no rule fired", which costs trace_slot_bits() per slot.
struct Encoding {
    int alpha = 0;         // bits for one symbol
    int beta = 0;          // bits for one rule in the operator's field
    int delta = 1;         // the halt/continue bit
    std::string symbols;   // position = code, alphabet order
    int rule_count = 0;

    int symbol_code(char symbol) const;                // EncodingOverflow if absent
    std::optional<char> symbol_at(uint32_t code) const;
    uint32_t rule_code(int rule_id) const;             // 0-based, EncodingOverflow on bad id
    int rule_id(uint32_t code) const;

    int trace_slot_bits() const;                       // width of one 1-based code
    uint64_t trace_code(int rule_id) const;            // 0 reserved for "none"

    int operator_bits() const { return 2 * alpha + beta + delta; }
    uint64_t operator_size() const { return uint64_t{1} << operator_bits(); }
};

Encoding compute_encoding(const ProductionSystem& system);

// Field slices of a basis-state index, big-endian gamma|b0|b1|b2 with
// widths alpha, beta, alpha, delta.
struct BasisState {
    uint32_t gamma = 0;
    uint32_t b0 = 0;
    uint32_t b1 = 0;
    uint32_t b2 = 0;
};

BasisState slice_index(uint64_t index, const Encoding& enc);
uint64_t join_fields(const BasisState& fields, const Encoding& enc);

}  // namespace qps
