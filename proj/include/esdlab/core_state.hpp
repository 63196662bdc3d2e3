#pragma once

// Two-qubit X-states, full 4x4 density matrices, and the t <-> X
// reparametrization.
//
// Basis ordering throughout the library is |11>, |10>, |01>, |00>
// (index 0..3), so `a` is the doubly excited population and `d` the ground
// population. Coherences are stored as upper-triangular entries:
// w = rho(0,3) couples |11> and |00>, z = rho(1,2) couples |10> and |01>.

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace esdlab {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr int kIdx11 = 0;
inline constexpr int kIdx10 = 1;
inline constexpr int kIdx01 = 2;
inline constexpr int kIdx00 = 3;

/// Slack on positivity and trace checks for X-states.
inline constexpr double kPsdSlack = 1e-12;

struct XState {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    Complex z{};
    Complex w{};

    double trace() const noexcept { return a + b + c + d; }

    friend bool operator==(const XState&, const XState&) = default;
};

enum class XStateIssue { None, NonFinite, NegativePopulation, Trace, BlockPositivity };

struct ValidationResult {
    XStateIssue issue = XStateIssue::None;
    std::string detail;

    bool ok() const noexcept { return issue == XStateIssue::None; }
    explicit operator bool() const noexcept { return ok(); }
};

/// Checks every X-state invariant and reports the first one that fails.
ValidationResult validate_xstate(const XState& s);

/// Throws the error matching the first failed invariant.
void require_valid(const XState& s);

/// Spontaneous rate and mean thermal occupation shared by both reservoirs.
struct BathParams {
    double gamma = 1.0;
    double nbar = 0.0;

    /// Rate of the coherence decay, Gamma (2 nbar + 1).
    double decay_rate() const noexcept { return gamma * (2.0 * nbar + 1.0); }
};

void require_valid(const BathParams& bath);

/// A point of the monotone time coordinate X = exp(-Gamma (2 nbar + 1) t).
class XCoordinate {
public:
    /// Throws DomainError unless 0 <= x <= 1.
    explicit XCoordinate(double x);

    double value() const noexcept { return x_; }

    friend bool operator==(const XCoordinate&, const XCoordinate&) = default;

private:
    double x_;
};

XCoordinate x_of_t(double t, const BathParams& bath);

/// Inverse of x_of_t. X = 0 corresponds to infinite time and is a DomainError.
double t_of_x(XCoordinate x, const BathParams& bath);

/// A validated two-qubit density matrix: Hermitian and unit trace within
/// 1e-12, smallest eigenvalue >= -1e-9.
class DensityMatrix4 {
public:
    /// Throws InvalidDensityMatrix if any invariant fails.
    explicit DensityMatrix4(const Matrix4c& m);

    const Matrix4c& matrix() const noexcept { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    double min_eigenvalue() const;

private:
    Matrix4c m_;
};

/// Smallest eigenvalue of a Hermitian 4x4 matrix (Hermitian part is used).
double min_hermitian_eigenvalue(const Matrix4c& m);

DensityMatrix4 xstate_to_matrix(const XState& s);

/// Unvalidated placement of the X-state entries into a 4x4 matrix.
Matrix4c xstate_entries(const XState& s) noexcept;

/// Largest magnitude among the entries outside the X pattern.
double max_off_x_magnitude(const Matrix4c& m) noexcept;

/// Throws NotXForm if an off-X entry has magnitude >= tol.
XState matrix_to_xstate(const DensityMatrix4& m, double tol = 1e-10);

}  // namespace esdlab
