#pragma once

// Numerical kernels shared by the physics modules: quartic root finding,
// bracketed refinement, fixed-step RK4 and the spectrum of rho * rho~.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "esdlab/core_state.hpp"
#include "esdlab/errors.hpp"

namespace esdlab {

/// p0 + p1 X + p2 X^2
struct Poly2 {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double operator()(double x) const noexcept { return c0 + x * (c1 + x * c2); }

    friend bool operator==(const Poly2&, const Poly2&) = default;
};

/// sum_k c[k] X^k, k = 0..4
struct Poly4 {
    std::array<double, 5> c{};

    double operator()(double x) const noexcept;
    Complex operator()(Complex x) const noexcept;

    /// max_k |c[k]|
    double scale() const noexcept;

    /// k-th derivative evaluated at x.
    double derivative(double x, int k) const noexcept;

    friend bool operator==(const Poly4&, const Poly4&) = default;
};

Poly4 operator*(const Poly2& lhs, const Poly2& rhs) noexcept;
Poly4 operator-(const Poly4& lhs, const Poly4& rhs) noexcept;

struct Root {
    double value = 0.0;
    int multiplicity = 1;
    double residual = 0.0;  // |p(value)|
};

/// Real roots sorted ascending, each listed once with its multiplicity.
struct RootSet {
    std::vector<Root> roots;

    /// Number of roots counted with multiplicity.
    int count() const noexcept;

    /// Root values repeated according to multiplicity, ascending.
    std::vector<double> values() const;
};

/// All real roots of a polynomial of degree <= 4. Each root is Newton-polished;
/// clusters consistent with a perturbed multiple root are merged and reported
/// at their centroid. Leading coefficients below 1e-14 * scale are treated as
/// zero. Throws ZeroPolynomial if every coefficient vanishes.
RootSet solve_quartic_real(const Poly4& p);

inline constexpr double kUnitBoundaryTol = 1e-12;

struct UnitIntervalRoot {
    double value = 0.0;
    int multiplicity = 1;
    bool boundary = false;  // within kUnitBoundaryTol of 0 or 1
};

/// Roots inside (0, 1). Roots within `boundary_tol` of either endpoint are
/// kept but flagged; everything else outside the open interval is dropped.
std::vector<UnitIntervalRoot> roots_in_unit_interval(const RootSet& roots,
                                                     double boundary_tol = kUnitBoundaryTol);

using ScalarFunction = std::function<double(double)>;

/// Root of f inside [lo, hi] given a sign change. Never leaves the initial
/// bracket. Stops once the bracket is narrower than tol or f hits zero.
/// Throws NoSignChange if f(lo) and f(hi) share a strict sign.
double refine_bracketed_root(const ScalarFunction& f, double lo, double hi, double tol = 1e-15);

/// One classical fourth-order Runge-Kutta step of y' = rhs(y).
template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(Rhs&& rhs, const std::array<double, N>& y, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("rk4 step size must be > 0");
    auto axpy = [](const std::array<double, N>& base, double h, const std::array<double, N>& k) {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + h * k[i];
        return out;
    };
    const std::array<double, N> k1 = rhs(y);
    const std::array<double, N> k2 = rhs(axpy(y, 0.5 * dt, k1));
    const std::array<double, N> k3 = rhs(axpy(y, 0.5 * dt, k2));
    const std::array<double, N> k4 = rhs(axpy(y, dt, k3));
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(out[i])) throw NonFiniteState("RK4 produced a non-finite component");
    }
    return out;
}

/// Coefficients of det(lambda I - m) in Poly4 order, built from sums of
/// principal minors. Imaginary parts are returned separately.
struct CharacteristicPolynomial {
    Poly4 real;
    std::array<double, 5> imag{};
};

CharacteristicPolynomial characteristic_polynomial(const Matrix4c& m);

/// Eigenvalues, descending, of a 4x4 matrix known to have a real nonnegative
/// spectrum (such as rho * rho~). Values below 1e-12 in magnitude are clamped
/// to 0. Throws ComplexSpectrum if the characteristic polynomial has
/// imaginary coefficients above 1e-9, fewer than four real roots, or a root
/// below -1e-12.
std::array<double, 4> eigvals_product4(const Matrix4c& m);

}  // namespace esdlab
