#include "esdlab/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

namespace esdlab {

double Poly4::operator()(double x) const noexcept {
    return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

Complex Poly4::operator()(Complex x) const noexcept {
    return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

double Poly4::scale() const noexcept {
    double s = 0.0;
    for (double v : c) s = std::max(s, std::abs(v));
    return s;
}

double Poly4::derivative(double x, int k) const noexcept {
    // d^k/dx^k of sum c[j] x^j = sum_{j>=k} c[j] * j!/(j-k)! * x^(j-k)
    double acc = 0.0;
    for (int j = 4; j >= k; --j) {
        double falling = 1.0;
        for (int m = 0; m < k; ++m) falling *= static_cast<double>(j - m);
        acc = acc * x + c[static_cast<std::size_t>(j)] * falling;
    }
    return acc;
}

Poly4 operator*(const Poly2& lhs, const Poly2& rhs) noexcept {
    Poly4 out;
    out.c[0] = lhs.c0 * rhs.c0;
    out.c[1] = lhs.c0 * rhs.c1 + lhs.c1 * rhs.c0;
    out.c[2] = lhs.c0 * rhs.c2 + lhs.c1 * rhs.c1 + lhs.c2 * rhs.c0;
    out.c[3] = lhs.c1 * rhs.c2 + lhs.c2 * rhs.c1;
    out.c[4] = lhs.c2 * rhs.c2;
    return out;
}

Poly4 operator-(const Poly4& lhs, const Poly4& rhs) noexcept {
    Poly4 out;
    for (std::size_t k = 0; k < 5; ++k) out.c[k] = lhs.c[k] - rhs.c[k];
    return out;
}

int RootSet::count() const noexcept {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
}

std::vector<double> RootSet::values() const {
    std::vector<double> out;
    for (const auto& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
    return out;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner on a coefficient vector (ascending powers), value and derivative.
std::pair<Complex, Complex> horner(const std::vector<double>& coeffs, Complex x) {
    Complex p = 0.0;
    Complex dp = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + coeffs[k];
    }
    return {p, dp};
}

// All complex roots of a polynomial of degree >= 1 with nonzero constant and
// leading terms, ascending coefficients.
std::vector<Complex> complex_roots(const std::vector<double>& coeffs) {
    const std::size_t degree = coeffs.size() - 1;
    if (degree == 1) return {Complex(-coeffs[0] / coeffs[1], 0.0)};
    if (degree == 2) {
        const double a = coeffs[2];
        const double b = coeffs[1];
        const double c = coeffs[0];
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            return {Complex(q / a, 0.0), Complex(c / q, 0.0)};
        }
        const double re = -b / (2.0 * a);
        const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
        return {Complex(re, im), Complex(re, -im)};
    }

    // Aberth-Ehrlich simultaneous iteration on the monic polynomial.
    std::vector<double> monic(coeffs);
    for (double& v : monic) v /= coeffs[degree];
    const double radius = std::pow(std::abs(monic[0]), 1.0 / static_cast<double>(degree));
    std::vector<Complex> z(degree);
    for (std::size_t k = 0; k < degree; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
        z[k] = std::polar(radius, angle);
    }
    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            const auto [p, dp] = horner(monic, z[i]);
            if (p == 0.0) continue;
            if (dp == 0.0) {
                z[i] += std::polar(radius * 1e-8 + 1e-300, 1.0 + static_cast<double>(iter));
                worst = std::numeric_limits<double>::infinity();
                continue;
            }
            const Complex ratio = p / dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < degree; ++j) {
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / std::max(std::abs(z[i]), 1e-300));
        }
        if (worst <= 4.0 * kEps) break;
    }
    return z;
}

// Newton on the order-th derivative of p. A k-fold root of p is a simple
// root of its (k-1)-th derivative, so order = k - 1 polishes multiple roots.
double newton_polish(const Poly4& p, double x, int order = 0) {
    auto f = [&](double v) { return order == 0 ? p(v) : p.derivative(v, order); };
    double best = x;
    double best_res = std::abs(f(x));
    for (int iter = 0; iter < 30 && best_res > 0.0; ++iter) {
        const double dp = p.derivative(x, order + 1);
        if (dp == 0.0) break;
        const double next = x - f(x) / dp;
        if (!std::isfinite(next)) break;
        const double res = std::abs(f(next));
        x = next;
        if (res < best_res) {
            best_res = res;
            best = next;
        } else if (iter > 3) {
            break;
        }
    }
    return best;
}

// Spread a k-fold root can acquire from rounding in the evaluation of p.
double multiple_root_spread(const Poly4& p, double at, int k) {
    double magnitude = 0.0;
    double power = 1.0;
    for (double ck : p.c) {
        magnitude += std::abs(ck) * power;
        power *= std::abs(at);
    }
    double factorial = 1.0;
    for (int m = 2; m <= k; ++m) factorial *= m;
    const double taylor = std::abs(p.derivative(at, k)) / factorial;
    if (taylor == 0.0) return 0.0;
    return 10.0 * std::pow(16.0 * kEps * magnitude / taylor, 1.0 / k);
}

}  // namespace

RootSet solve_quartic_real(const Poly4& p) {
    for (double v : p.c) {
        if (!std::isfinite(v)) throw NonFiniteState("non-finite polynomial coefficient");
    }
    const double scale = p.scale();
    if (scale == 0.0) throw ZeroPolynomial("all coefficients are zero");

    int degree = 4;
    while (degree > 0 && std::abs(p.c[static_cast<std::size_t>(degree)]) < 1e-14 * scale) --degree;
    int zero_roots = 0;
    while (zero_roots < degree && p.c[static_cast<std::size_t>(zero_roots)] == 0.0) ++zero_roots;

    std::vector<double> reduced(p.c.begin() + zero_roots, p.c.begin() + degree + 1);
    std::vector<Complex> candidates;
    if (reduced.size() > 1) candidates = complex_roots(reduced);

    std::vector<double> real;
    for (int k = 0; k < zero_roots; ++k) real.push_back(0.0);
    for (const Complex& z : candidates) {
        const double x = z.real();
        const double size = std::max(1.0, std::abs(x));
        if (std::abs(z.imag()) > 1e-3 * size) continue;
        if (std::abs(p(x)) > 1e-12 * scale * std::pow(size, degree)) continue;
        real.push_back(x);
    }
    std::sort(real.begin(), real.end());

    RootSet out;
    std::size_t i = 0;
    while (i < real.size()) {
        std::size_t j = i + 1;
        // Grow the cluster while the members stay within the spread a perturbed
        // multiple root of that order would show.
        while (j < real.size()) {
            const int k = static_cast<int>(j - i + 1);
            double sum = 0.0;
            for (std::size_t m = i; m <= j; ++m) sum += real[m];
            const double centroid = sum / k;
            if (real[j] - real[i] > multiple_root_spread(p, centroid, k)) break;
            ++j;
        }
        const int multiplicity = static_cast<int>(j - i);
        double value;
        if (multiplicity == 1) {
            value = real[i] == 0.0 && zero_roots > 0 ? 0.0 : newton_polish(p, real[i]);
        } else {
            double sum = 0.0;
            for (std::size_t m = i; m < j; ++m) sum += real[m];
            const double centroid = sum / multiplicity;
            const double polished = newton_polish(p, centroid, multiplicity - 1);
            const bool stays = std::abs(polished - centroid) <= multiple_root_spread(p, centroid, multiplicity);
            value = stays ? polished : centroid;
        }
        out.roots.push_back({value, multiplicity, std::abs(p(value))});
        i = j;
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const Root& l, const Root& r) { return l.value < r.value; });
    return out;
}

std::vector<UnitIntervalRoot> roots_in_unit_interval(const RootSet& roots, double boundary_tol) {
    std::vector<UnitIntervalRoot> out;
    for (const auto& r : roots.roots) {
        const bool near_edge = std::abs(r.value) <= boundary_tol || std::abs(r.value - 1.0) <= boundary_tol;
        if (near_edge) {
            out.push_back({r.value, r.multiplicity, true});
        } else if (r.value > 0.0 && r.value < 1.0) {
            out.push_back({r.value, r.multiplicity, false});
        }
    }
    return out;
}

double refine_bracketed_root(const ScalarFunction& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) std::swap(lo, hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0.0) == (fhi > 0.0)) {
        throw NoSignChange("f(lo) and f(hi) have the same sign");
    }
    auto width_ok = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    std::uintmax_t max_iter = 400;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, width_ok, max_iter);
    const double fa = std::abs(f(a));
    const double fb = std::abs(f(b));
    return fa <= fb ? a : b;
}

CharacteristicPolynomial characteristic_polynomial(const Matrix4c& m) {
    using Eigen::MatrixXcd;
    // e_k = sum of k x k principal minors. Minors of size >= 3 go through a
    // pivoted LU so that rank-deficient inputs give minors of the right order
    // in epsilon.
    Complex e1 = m.trace();
    Complex e2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) e2 += m(i, i) * m(j, j) - m(i, j) * m(j, i);
    }
    Complex e3 = 0.0;
    for (int skip = 0; skip < 4; ++skip) {
        MatrixXcd sub(3, 3);
        for (int r = 0, rr = 0; r < 4; ++r) {
            if (r == skip) continue;
            for (int c = 0, cc = 0; c < 4; ++c) {
                if (c == skip) continue;
                sub(rr, cc++) = m(r, c);
            }
            ++rr;
        }
        e3 += Eigen::FullPivLU<MatrixXcd>(sub).determinant();
    }
    const Complex e4 = Eigen::FullPivLU<MatrixXcd>(MatrixXcd(m)).determinant();

    CharacteristicPolynomial out;
    const std::array<Complex, 5> coeffs = {e4, -e3, e2, -e1, Complex(1.0)};
    for (std::size_t k = 0; k < 5; ++k) {
        out.real.c[k] = coeffs[k].real();
        out.imag[k] = coeffs[k].imag();
    }
    return out;
}

std::array<double, 4> eigvals_product4(const Matrix4c& m) {
    const auto poly = characteristic_polynomial(m);
    for (double im : poly.imag) {
        if (std::abs(im) > 1e-9) throw ComplexSpectrum("characteristic polynomial has complex coefficients");
    }
    const auto roots = solve_quartic_real(poly.real);
    const auto values = roots.values();
    if (values.size() != 4) {
        throw ComplexSpectrum("only " + std::to_string(values.size()) + " real eigenvalues found");
    }
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        double v = values[3 - k];
        if (std::abs(v) < 1e-12) v = 0.0;
        if (v < 0.0) throw ComplexSpectrum("negative eigenvalue " + std::to_string(v));
        out[k] = v;
    }
    return out;
}

}  // namespace esdlab
