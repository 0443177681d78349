#include "qps/perf_model.hpp"

#include <bit>
#include <cmath>

namespace qps {

uint64_t classical_iterations(uint64_t s_i, uint64_t d) {
    return s_i * d;
}

double quantum_iterations(int m, uint64_t d) {
    return std::sqrt(std::pow(2.0, m)) * static_cast<double>(d);
}

double ratio(uint64_t s_i, int m) {
    return static_cast<double>(s_i) / std::sqrt(std::pow(2.0, m));
}

MBounds bounds_for_m(uint64_t s_i) {
    if (s_i < 1) throw Error("initial set size must be at least 1");
    MBounds bounds;
    bounds.low = s_i == 1 ? 0 : std::bit_width(s_i - 1);         // ceil(log2 s_i)
    bounds.high = std::bit_width(s_i * s_i) - 1;                 // floor(log2 s_i^2)
    return bounds;
}

int trace_register_bits(uint64_t rule_count, uint64_t depth) {
    if (rule_count < 1) throw Error("rule count must be at least 1");
    uint64_t paths = 1;
    for (uint64_t i = 0; i < depth; ++i) {
        if (paths > UINT64_MAX / rule_count)
            throw TooLargeError("rule_count^depth exceeds 64 bits");
        paths *= rule_count;
    }
    return paths <= 1 ? 0 : std::bit_width(paths - 1);           // ceil(log2 paths)
}

double hierarchical_comparison(int n) {
    return std::sqrt(1.0 / std::pow(2.0, n + 1));
}

std::vector<SurfaceRow> ratio_surface(uint64_t s_i_max, uint64_t depth) {
    if (s_i_max < 1 || s_i_max > kSurfaceMax)
        throw Error("surface range must lie in [1, 2^13]");
    std::vector<SurfaceRow> rows;
    for (uint64_t s = 1; s <= s_i_max; ++s) {
        MBounds bounds = bounds_for_m(s);
        for (int m = bounds.low; m <= bounds.high; ++m)
            rows.push_back({s, m, classical_iterations(s, depth), quantum_iterations(m, depth),
                            ratio(s, m)});
    }
    return rows;
}

}  // namespace qps
