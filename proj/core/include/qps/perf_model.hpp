#pragma once

#include <cstdint>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

// Sequential cost of testing every initial state to depth d.
uint64_t classical_iterations(uint64_t s_i, uint64_t d);

// Amplified-search cost over an m-bit space, d oracle steps per iterate:
// sqrt(2^m) * d.
double quantum_iterations(int m, uint64_t d);

// Classical over quantum iteration count, s_i / sqrt(2^m). Greater than
// 1 means the amplified search wins under this accounting.
double ratio(uint64_t s_i, int m);

// Inclusive range of register widths for which the speedup survives:
// ceil(log2 s_i) up to floor(log2 s_i^2). Computed in integer
// arithmetic, no floating-point logs.
struct MBounds {
    int low = 0;
    int high = 0;
};
MBounds bounds_for_m(uint64_t s_i);

// Bits to encode all |R|^d rule sequences of length d.
int trace_register_bits(uint64_t rule_count, uint64_t depth);

// Iteration-count ratio against a search over paths alone:
// sqrt(2^p) / sqrt(2^(n+p+1)) = sqrt(1 / 2^(n+1)). The p bits cancel.
double hierarchical_comparison(int n);

struct SurfaceRow {
    uint64_t s_i = 0;
    int m = 0;
    uint64_t classical = 0;
    double quantum = 0.0;
    double ratio = 0.0;
};

// One row per (s_i, m) pair with m inside bounds_for_m(s_i), for
// s_i = 1..s_i_max; the plateaus of equal m-low across consecutive s_i
// values are the surface's ladder shape.
std::vector<SurfaceRow> ratio_surface(uint64_t s_i_max, uint64_t depth = 1);

inline constexpr uint64_t kSurfaceMax = uint64_t{1} << 13;

}  // namespace qps
