#pragma once

// Two qubits, each damped by its own thermal reservoir (rate Gamma, mean
// occupation nbar). The unitary part of the evolution is not modelled.
//
// In X = exp(-Gamma (2 nbar + 1) t) every X-state element is a polynomial:
// populations are quadratic, coherences linear.

#include <span>
#include <vector>

#include "esdlab/core_state.hpp"
#include "esdlab/numerics.hpp"

namespace esdlab {

/// Time derivative of the X-state parameters (same layout as XState).
using XStateRate = XState;

/// Population polynomials in X plus the initial coherences, which decay as
/// z(X) = z0 X and w(X) = w0 X.
struct PropagatorPolynomials {
    Poly2 a;
    Poly2 b;
    Poly2 c;
    Poly2 d;
    Complex z0{};
    Complex w0{};

    XState evaluate(double x) const noexcept;
    XState evaluate(XCoordinate x) const noexcept { return evaluate(x.value()); }
};

XStateRate ode_rhs_x(const XState& s, const BathParams& bath);

/// L_1[rho] + L_2[rho] for an arbitrary 4x4 operator (not validated, so RK4
/// stages can be passed through).
Matrix4c lindblad_rhs_full(const Matrix4c& m, const BathParams& bath);
Matrix4c lindblad_rhs_full(const DensityMatrix4& m, const BathParams& bath);

/// Exact solution of the X-state equations for initial state s0.
PropagatorPolynomials analytic_coefficients(const XState& s0, double nbar);

XState evolve_analytic(const XState& s0, const BathParams& bath, double t);

/// RK4 integration of the X-state equations. The step is t / ceil(t / dt),
/// so the endpoint is reached exactly with a step no larger than dt.
XState evolve_numeric(const XState& s0, const BathParams& bath, double t, double dt);

/// RK4 states at each of `times` (ascending, >= 0) from one integration pass.
std::vector<XState> numeric_trajectory(const XState& s0, const BathParams& bath,
                                       std::span<const double> times, double dt);

/// RK4 integration of the full 4x4 Lindblad equation.
Matrix4c evolve_numeric_full(const Matrix4c& rho0, const BathParams& bath, double t, double dt);

/// RK4 matrices at each of `times` (ascending, >= 0).
std::vector<Matrix4c> numeric_trajectory_full(const Matrix4c& rho0, const BathParams& bath,
                                              std::span<const double> times, double dt);

/// Product of single-qubit thermal states, the t -> infinity fixed point.
XState steady_state(double nbar);

/// Default oracle step, Gamma * dt = 1e-3.
inline double default_dt(const BathParams& bath) { return 1e-3 / bath.gamma; }

}  // namespace esdlab
