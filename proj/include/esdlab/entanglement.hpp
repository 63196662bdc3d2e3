#pragma once

#include "esdlab/core_state.hpp"

namespace esdlab {

/// Wootters concurrence, clamped to [0, 1].
class Concurrence {
public:
    explicit Concurrence(double value);

    double value() const noexcept { return value_; }
    bool entangled() const noexcept { return value_ > 0.0; }

private:
    double value_;
};

/// Closed form for X-states: 2 max{0, |z| - sqrt(a d), |w| - sqrt(b c)}.
Concurrence concurrence_x(const XState& s);

/// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
Matrix4c spin_flip(const Matrix4c& m);

/// General Wootters construction through the spectrum of rho * rho~.
Concurrence concurrence_general(const DensityMatrix4& m);

}  // namespace esdlab
