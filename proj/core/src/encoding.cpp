#include "qps/encoding.hpp"

#include <bit>

namespace qps {

int ceil_log2(uint64_t count) {
    if (count <= 1) return 0;
    return std::bit_width(count - 1);
}

int Encoding::symbol_code(char symbol) const {
    size_t pos = symbols.find(symbol);
    if (pos == std::string::npos)
        throw EncodingOverflowError(std::string("symbol '") + symbol + "' has no code");
    return static_cast<int>(pos);
}

std::optional<char> Encoding::symbol_at(uint32_t code) const {
    if (code >= symbols.size()) return std::nullopt;
    return symbols[code];
}

uint32_t Encoding::rule_code(int id) const {
    if (id < 1 || id > rule_count)
        throw EncodingOverflowError("rule id " + std::to_string(id) + " has no code");
    return static_cast<uint32_t>(id - 1);
}

int Encoding::rule_id(uint32_t code) const {
    if (static_cast<int>(code) >= rule_count)
        throw DecodeFailureError("rule code " + std::to_string(code) + " is unassigned");
    return static_cast<int>(code) + 1;
}

int Encoding::trace_slot_bits() const {
    return ceil_log2(static_cast<uint64_t>(rule_count) + 1);
}

uint64_t Encoding::trace_code(int id) const {
    if (id < 1 || id > rule_count)
        throw EncodingOverflowError("rule id " + std::to_string(id) + " has no trace code");
    return static_cast<uint64_t>(id);
}

Encoding compute_encoding(const ProductionSystem& system) {
    Encoding enc;
    enc.symbols = system.alphabet;
    enc.rule_count = static_cast<int>(system.rules.size());
    enc.alpha = ceil_log2(enc.symbols.size());
    enc.beta = ceil_log2(static_cast<uint64_t>(enc.rule_count));
    enc.delta = 1;
    return enc;
}

namespace {

uint64_t mask(int bits) {
    return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

}  // namespace

BasisState slice_index(uint64_t index, const Encoding& enc) {
    BasisState fields;
    fields.b2 = static_cast<uint32_t>(index & mask(enc.delta));
    fields.b1 = static_cast<uint32_t>((index >> enc.delta) & mask(enc.alpha));
    fields.b0 = static_cast<uint32_t>((index >> (enc.delta + enc.alpha)) & mask(enc.beta));
    fields.gamma =
        static_cast<uint32_t>((index >> (enc.delta + enc.alpha + enc.beta)) & mask(enc.alpha));
    return fields;
}

uint64_t join_fields(const BasisState& fields, const Encoding& enc) {
    return (static_cast<uint64_t>(fields.gamma) << (enc.delta + enc.alpha + enc.beta)) |
           (static_cast<uint64_t>(fields.b0) << (enc.delta + enc.alpha)) |
           (static_cast<uint64_t>(fields.b1) << enc.delta) | fields.b2;
}

}  // namespace qps
