#include "esdlab/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "esdlab/errors.hpp"
#include "esdlab/numerics.hpp"

namespace esdlab {

Concurrence::Concurrence(double value) : value_(std::clamp(value, 0.0, 1.0)) {
    if (!std::isfinite(value)) throw NonFiniteValue("concurrence is not finite");
}

Concurrence concurrence_x(const XState& s) {
    require_valid(s);
    const double zpart = std::abs(s.z) - std::sqrt(std::max(0.0, s.a * s.d));
    const double wpart = std::abs(s.w) - std::sqrt(std::max(0.0, s.b * s.c));
    return Concurrence(2.0 * std::max({0.0, zpart, wpart}));
}

Matrix4c spin_flip(const Matrix4c& m) {
    // sigma_y x sigma_y is anti-diagonal with entries (-1, +1, +1, -1).
    Matrix4c flip = Matrix4c::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    return flip * m.conjugate() * flip;
}

Concurrence concurrence_general(const DensityMatrix4& m) {
    const Matrix4c product = m.matrix() * spin_flip(m.matrix());
    const auto eigenvalues = eigvals_product4(product);  // descending
    std::array<double, 4> lambda{};
    for (std::size_t k = 0; k < 4; ++k) lambda[k] = std::sqrt(eigenvalues[k]);
    return Concurrence(lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace esdlab
