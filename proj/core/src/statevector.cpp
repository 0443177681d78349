#include "qps/statevector.hpp"

#include <cmath>
#include <string>

namespace qps {

double StateVector::norm_squared() const {
    double sum = 0.0;
    for (const std::complex<double>& a : amplitudes) sum += std::norm(a);
    return sum;
}

StateVector make_zero_state(const RegisterLayout& layout) {
    if (layout.total_bits() > kMaxRegisterBits)
        throw TooLargeError("register layout needs " + std::to_string(layout.total_bits()) +
                            " bits, guard is " + std::to_string(kMaxRegisterBits));
    StateVector v;
    v.layout = layout;
    v.amplitudes.assign(layout.dimension(), {0.0, 0.0});
    return v;
}

void assert_normalized(const StateVector& v) {
    double norm = v.norm_squared();
    if (std::abs(norm - 1.0) > kNormTolerance)
        throw Error("state norm drifted to " + std::to_string(norm));
}

}  // namespace qps
