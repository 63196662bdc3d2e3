#include "esdlab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "esdlab/errors.hpp"

namespace esdlab {

namespace {

using XVector = std::array<double, 8>;
using MatrixVector = std::array<double, 32>;

XVector pack(const XState& s) {
    return {s.a, s.b, s.c, s.d, s.z.real(), s.z.imag(), s.w.real(), s.w.imag()};
}

XState unpack(const XVector& v) {
    return {v[0], v[1], v[2], v[3], Complex(v[4], v[5]), Complex(v[6], v[7])};
}

MatrixVector pack(const Matrix4c& m) {
    MatrixVector v{};
    for (int i = 0; i < 16; ++i) {
        v[static_cast<std::size_t>(2 * i)] = m(i / 4, i % 4).real();
        v[static_cast<std::size_t>(2 * i + 1)] = m(i / 4, i % 4).imag();
    }
    return v;
}

Matrix4c unpack(const MatrixVector& v) {
    Matrix4c m;
    for (int i = 0; i < 16; ++i) {
        m(i / 4, i % 4) = Complex(v[static_cast<std::size_t>(2 * i)], v[static_cast<std::size_t>(2 * i + 1)]);
    }
    return m;
}

// Lowering operators |0><1| on qubit 1 and qubit 2 in the |11>,|10>,|01>,|00> basis.
const Matrix4c& lowering(int qubit) {
    static const Matrix4c ops[2] = {
        [] {
            Matrix4c m = Matrix4c::Zero();
            m(kIdx01, kIdx11) = 1.0;  // |11> -> |01>
            m(kIdx00, kIdx10) = 1.0;  // |10> -> |00>
            return m;
        }(),
        [] {
            Matrix4c m = Matrix4c::Zero();
            m(kIdx10, kIdx11) = 1.0;  // |11> -> |10>
            m(kIdx00, kIdx01) = 1.0;  // |01> -> |00>
            return m;
        }(),
    };
    return ops[qubit];
}

// L rho L^dag - (L^dag L rho + rho L^dag L) / 2
Matrix4c dissipator(const Matrix4c& jump, const Matrix4c& rho) {
    const Matrix4c jump_dag = jump.adjoint();
    const Matrix4c number = jump_dag * jump;
    return jump * rho * jump_dag - 0.5 * (number * rho + rho * number);
}

void check_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) throw DomainError("times must be finite and >= 0");
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("times must be ascending");
    }
}

template <std::size_t N, class Rhs>
std::array<double, N> integrate(Rhs&& rhs, std::array<double, N> y, double span, double dt) {
    if (span <= 0.0) return y;
    const double steps = std::ceil(span / dt);
    const double h = span / steps;
    for (long k = 0; k < static_cast<long>(steps); ++k) y = rk4_step(rhs, y, h);
    return y;
}

}  // namespace

XState PropagatorPolynomials::evaluate(double x) const noexcept {
    return {a(x), b(x), c(x), d(x), z0 * x, w0 * x};
}

XStateRate ode_rhs_x(const XState& s, const BathParams& bath) {
    const double g = bath.gamma;
    const double n = bath.nbar;
    XStateRate r;
    r.a = g * (-2.0 * (n + 1.0) * s.a + n * s.b + n * s.c);
    r.b = g * ((n + 1.0) * s.a - (2.0 * n + 1.0) * s.b + n * s.d);
    r.c = g * ((n + 1.0) * s.a - (2.0 * n + 1.0) * s.c + n * s.d);
    r.d = g * ((n + 1.0) * s.b + (n + 1.0) * s.c - 2.0 * n * s.d);
    r.z = -g * (2.0 * n + 1.0) * s.z;
    r.w = -g * (2.0 * n + 1.0) * s.w;
    return r;
}

Matrix4c lindblad_rhs_full(const Matrix4c& m, const BathParams& bath) {
    const double emission = bath.gamma * (bath.nbar + 1.0);
    const double absorption = bath.gamma * bath.nbar;
    Matrix4c out = Matrix4c::Zero();
    for (int qubit = 0; qubit < 2; ++qubit) {
        const Matrix4c& lower = lowering(qubit);
        out += emission * dissipator(lower, m);
        if (absorption != 0.0) out += absorption * dissipator(lower.adjoint(), m);
    }
    return out;
}

Matrix4c lindblad_rhs_full(const DensityMatrix4& m, const BathParams& bath) {
    return lindblad_rhs_full(m.matrix(), bath);
}

PropagatorPolynomials analytic_coefficients(const XState& s0, double nbar) {
    require_valid(s0);
    if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("nbar must be finite and >= 0");

    // The reservoirs act independently, so in the Heisenberg picture each
    // qubit's excited-state projector relaxes as P_i -> p + X (P_i - p), with
    // p = nbar / (2 nbar + 1) the thermal excitation. Every population is an
    // expectation of a product of two such factors, hence quadratic in X.
    const double p = nbar / (2.0 * nbar + 1.0);
    const double q = (nbar + 1.0) / (2.0 * nbar + 1.0);

    const double excited1 = s0.a + s0.b;  // <P_1>
    const double excited2 = s0.a + s0.c;  // <P_2>
    const double ground1 = s0.c + s0.d;   // <1 - P_1>
    const double ground2 = s0.b + s0.d;   // <1 - P_2>
    // <(P_1 - p)(P_2 - p)>; the other three correlators are +-kappa.
    const double kappa = s0.a - p * (excited1 + excited2) + p * p;

    PropagatorPolynomials out;
    out.a = {p * p, p * (excited1 - p) + p * (excited2 - p), kappa};
    out.b = {p * q, q * (excited1 - p) + p * (ground2 - q), -kappa};
    out.c = {p * q, p * (ground1 - q) + q * (excited2 - p), -kappa};
    out.d = {q * q, q * (ground1 - q) + q * (ground2 - q), kappa};
    out.z0 = s0.z;
    out.w0 = s0.w;
    return out;
}

XState evolve_analytic(const XState& s0, const BathParams& bath, double t) {
    require_valid(bath);
    return analytic_coefficients(s0, bath.nbar).evaluate(x_of_t(t, bath));
}

XState evolve_numeric(const XState& s0, const BathParams& bath, double t, double dt) {
    const double times[] = {t};
    return numeric_trajectory(s0, bath, times, dt).front();
}

std::vector<XState> numeric_trajectory(const XState& s0, const BathParams& bath,
                                       std::span<const double> times, double dt) {
    require_valid(s0);
    require_valid(bath);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be finite and > 0");
    check_times(times);

    auto rhs = [&bath](const XVector& v) { return pack(ode_rhs_x(unpack(v), bath)); };
    std::vector<XState> out;
    out.reserve(times.size());
    XVector y = pack(s0);
    double now = 0.0;
    for (double t : times) {
        y = integrate(rhs, y, t - now, dt);
        now = t;
        out.push_back(unpack(y));
    }
    return out;
}

Matrix4c evolve_numeric_full(const Matrix4c& rho0, const BathParams& bath, double t, double dt) {
    const double times[] = {t};
    return numeric_trajectory_full(rho0, bath, times, dt).front();
}

std::vector<Matrix4c> numeric_trajectory_full(const Matrix4c& rho0, const BathParams& bath,
                                              std::span<const double> times, double dt) {
    require_valid(bath);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be finite and > 0");
    check_times(times);

    auto rhs = [&bath](const MatrixVector& v) { return pack(lindblad_rhs_full(unpack(v), bath)); };
    std::vector<Matrix4c> out;
    out.reserve(times.size());
    MatrixVector y = pack(rho0);
    double now = 0.0;
    for (double t : times) {
        y = integrate(rhs, y, t - now, dt);
        now = t;
        out.push_back(unpack(y));
    }
    return out;
}

XState steady_state(double nbar) {
    if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("nbar must be finite and >= 0");
    const double p = nbar / (2.0 * nbar + 1.0);
    const double q = (nbar + 1.0) / (2.0 * nbar + 1.0);
    return {p * p, p * q, p * q, q * q, {}, {}};
}

}  // namespace esdlab
