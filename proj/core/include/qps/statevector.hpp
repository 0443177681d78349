#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

inline constexpr double kNormTolerance = 1e-12;
// Dense simulation guard: 2^22 complex doubles is 64 MiB.
inline constexpr int kMaxRegisterBits = 22;

// Widths of the three registers |x(n), y(1), z(p)>. Basis index is the
// big-endian concatenation x|y|z.
struct RegisterLayout {
    int n = 0;
    int p = 0;

    int total_bits() const { return n + 1 + p; }
    uint64_t dimension() const { return uint64_t{1} << total_bits(); }

    uint64_t index(uint64_t x, uint64_t y, uint64_t z) const {
        return (x << (1 + p)) | (y << p) | z;
    }
    uint64_t x_of(uint64_t index) const { return index >> (1 + p); }
    uint64_t y_of(uint64_t index) const { return (index >> p) & 1; }
    uint64_t z_of(uint64_t index) const { return index & ((uint64_t{1} << p) - 1); }

    bool operator==(const RegisterLayout&) const = default;
};

struct StateVector {
    RegisterLayout layout;
    std::vector<std::complex<double>> amplitudes;

    double norm_squared() const;
};

// All-zero amplitudes over the layout's dimension; TooLarge beyond the
// register guard.
StateVector make_zero_state(const RegisterLayout& layout);

// Throws Error when the norm has drifted past kNormTolerance.
void assert_normalized(const StateVector& v);

}  // namespace qps
