#pragma once

// Entanglement sudden death in the X coordinate.
//
// For an X-state the concurrence is positive exactly where one of
//   q_z(X) = |z0|^2 X^2 - a(X) d(X)
//   q_w(X) = |w0|^2 X^2 - b(X) c(X)
// is positive. Both are quartics in X. At X = 0 they equal
// -nbar^2 (nbar+1)^2 / (2 nbar + 1)^4 for every initial state, which is
// strictly negative at any nonzero temperature, so an initially entangled
// state must lose its entanglement at some X in (0, 1), i.e. in finite time.

#include <optional>
#include <string>
#include <vector>

#include "esdlab/core_state.hpp"
#include "esdlab/numerics.hpp"

namespace esdlab {

struct DeathQuartics {
    Poly4 q_z;
    Poly4 q_w;
};

DeathQuartics death_quartics(const XState& s0, double nbar);

/// Common value of both quartics at X = 0.
double thermal_floor(double nbar);

enum class DeathQuartic { Z, W };

/// A sign change of one quartic on [x_lo, x_hi] within [0, 1], plus the
/// refined root inside it.
struct DeathCertificate {
    DeathQuartic quartic = DeathQuartic::Z;
    double x_lo = 0.0;
    double x_hi = 1.0;
    double value_lo = 0.0;
    double value_hi = 0.0;
    double root = 0.0;
};

/// Throws ZeroTemperature for nbar == 0 and NotEntangled if s0 has zero
/// concurrence.
DeathCertificate certify_finite_death(const XState& s0, double nbar);

struct EntangledInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct EsdReport {
    std::vector<UnitIntervalRoot> roots_z;
    std::vector<UnitIntervalRoot> roots_w;
    /// Largest X with zero concurrence on (0, X]; empty when entanglement
    /// survives for all finite times.
    std::optional<double> death_x;
    /// t_of_x(death_x), or +infinity when asymptotic.
    double death_time = 0.0;
    /// Disjoint, ascending sub-intervals of [0, 1] where the concurrence is positive.
    std::vector<EntangledInterval> intervals;
    bool asymptotic = false;
};

struct EsdOptions {
    /// Use the closed-form w = 0 roots for q_z when they apply.
    bool closed_form = false;
};

EsdReport esd_report(const XState& s0, const BathParams& bath, EsdOptions options = {});

/// Real roots of q_z for w0 = 0 from the factorization of q_z into two
/// quadratics X^2 - 2 (r +- s) X - t^2. Works with the signed t^2. Throws
/// DegenerateDenominator when the common denominator vanishes.
std::vector<double> closed_form_roots_wzero(double a0, double d0, double zmag, double nbar);

/// r, s and t^2 of the closed form, exposed for tests. s is NaN when its
/// radicand is negative.
struct ClosedFormParameters {
    double denominator = 0.0;
    double r = 0.0;
    double s = 0.0;
    double t_squared = 0.0;
};

ClosedFormParameters closed_form_parameters(double a0, double d0, double zmag, double nbar);

std::string esd_report_to_json(const EsdReport& report);

}  // namespace esdlab
