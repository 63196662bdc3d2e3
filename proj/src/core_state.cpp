#include "esdlab/core_state.hpp"

#include <cmath>
#include <sstream>

#include "esdlab/errors.hpp"

namespace esdlab {

namespace {

std::string describe(const XState& s) {
    std::ostringstream os;
    os.precision(17);
    os << "(a=" << s.a << ", b=" << s.b << ", c=" << s.c << ", d=" << s.d << ", z=" << s.z
       << ", w=" << s.w << ")";
    return os.str();
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

bool is_off_x(int row, int col) {
    if (row == col) return false;
    if ((row == kIdx11 && col == kIdx00) || (row == kIdx00 && col == kIdx11)) return false;
    if ((row == kIdx10 && col == kIdx01) || (row == kIdx01 && col == kIdx10)) return false;
    return true;
}

}  // namespace

ValidationResult validate_xstate(const XState& s) {
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.c) || !std::isfinite(s.d) ||
        !finite(s.z) || !finite(s.w)) {
        return {XStateIssue::NonFinite, "non-finite entry in " + describe(s)};
    }
    for (double p : {s.a, s.b, s.c, s.d}) {
        if (p < -kPsdSlack) {
            return {XStateIssue::NegativePopulation, "negative population in " + describe(s)};
        }
    }
    if (std::abs(s.trace() - 1.0) > kPsdSlack) {
        std::ostringstream os;
        os.precision(17);
        os << "trace " << s.trace() << " != 1 in " << describe(s);
        return {XStateIssue::Trace, os.str()};
    }
    if (s.a * s.d < std::norm(s.w) - kPsdSlack) {
        return {XStateIssue::BlockPositivity, "a*d < |w|^2 in " + describe(s)};
    }
    if (s.b * s.c < std::norm(s.z) - kPsdSlack) {
        return {XStateIssue::BlockPositivity, "b*c < |z|^2 in " + describe(s)};
    }
    return {};
}

void require_valid(const XState& s) {
    auto r = validate_xstate(s);
    switch (r.issue) {
        case XStateIssue::None: return;
        case XStateIssue::NonFinite: throw NonFiniteValue(r.detail);
        case XStateIssue::NegativePopulation: throw NegativePopulation(r.detail);
        case XStateIssue::Trace: throw TraceError(r.detail);
        case XStateIssue::BlockPositivity: throw BlockPositivityError(r.detail);
    }
}

void require_valid(const BathParams& bath) {
    if (!std::isfinite(bath.gamma) || !(bath.gamma > 0.0)) {
        throw DomainError("gamma must be finite and > 0");
    }
    if (!std::isfinite(bath.nbar) || bath.nbar < 0.0) {
        throw DomainError("nbar must be finite and >= 0");
    }
}

XCoordinate::XCoordinate(double x) : x_(x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("X coordinate must lie in [0, 1], got " + std::to_string(x));
    }
}

XCoordinate x_of_t(double t, const BathParams& bath) {
    require_valid(bath);
    if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and >= 0");
    return XCoordinate(std::exp(-bath.decay_rate() * t));
}

double t_of_x(XCoordinate x, const BathParams& bath) {
    require_valid(bath);
    if (x.value() == 0.0) throw DomainError("X = 0 corresponds to infinite time");
    return -std::log(x.value()) / bath.decay_rate();
}

double min_hermitian_eigenvalue(const Matrix4c& m) {
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix4::DensityMatrix4(const Matrix4c& m) : m_(m) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!finite(m(i, j))) throw InvalidDensityMatrix("non-finite entry");
            if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12) {
                throw InvalidDensityMatrix("not Hermitian at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
            }
        }
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > 1e-12) throw InvalidDensityMatrix("trace != 1");
    if (min_hermitian_eigenvalue(m) < -1e-9) throw InvalidDensityMatrix("negative eigenvalue");
}

double DensityMatrix4::min_eigenvalue() const { return min_hermitian_eigenvalue(m_); }

Matrix4c xstate_entries(const XState& s) noexcept {
    Matrix4c m = Matrix4c::Zero();
    m(kIdx11, kIdx11) = s.a;
    m(kIdx10, kIdx10) = s.b;
    m(kIdx01, kIdx01) = s.c;
    m(kIdx00, kIdx00) = s.d;
    m(kIdx11, kIdx00) = s.w;
    m(kIdx00, kIdx11) = std::conj(s.w);
    m(kIdx10, kIdx01) = s.z;
    m(kIdx01, kIdx10) = std::conj(s.z);
    return m;
}

DensityMatrix4 xstate_to_matrix(const XState& s) {
    require_valid(s);
    return DensityMatrix4(xstate_entries(s));
}

double max_off_x_magnitude(const Matrix4c& m) noexcept {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (is_off_x(i, j)) worst = std::max(worst, std::abs(m(i, j)));
        }
    }
    return worst;
}

XState matrix_to_xstate(const DensityMatrix4& m, double tol) {
    const double worst = max_off_x_magnitude(m.matrix());
    if (worst >= tol) {
        std::ostringstream os;
        os << "largest off-X entry magnitude " << worst << " >= " << tol;
        throw NotXForm(os.str());
    }
    XState s;
    s.a = m(kIdx11, kIdx11).real();
    s.b = m(kIdx10, kIdx10).real();
    s.c = m(kIdx01, kIdx01).real();
    s.d = m(kIdx00, kIdx00).real();
    s.w = m(kIdx11, kIdx00);
    s.z = m(kIdx10, kIdx01);
    return s;
}

}  // namespace esdlab
