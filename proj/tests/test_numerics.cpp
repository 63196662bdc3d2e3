#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "esdlab/dynamics.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/esd.hpp"
#include "esdlab/numerics.hpp"
#include "oracles.hpp"

using namespace esdlab;

namespace {

Poly4 from_roots(double lead, std::initializer_list<double> roots) {
    // lead * prod (X - r), ascending coefficients
    std::vector<double> c{lead};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = next;
    }
    Poly4 p;
    for (std::size_t k = 0; k < c.size(); ++k) p.c[k] = c[k];
    return p;
}

const XState kFig2State{0.1, 0.425, 0.425, 0.05, 0.3, 0.0};

}  // namespace

TEST_CASE("solve_quartic_real: simple cases") {
    const auto roots = solve_quartic_real(Poly4{{-1.0, 0.0, 1.0, 0.0, 0.0}});
    REQUIRE(roots.roots.size() == 2);
    CHECK(roots.roots[0].value == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(roots.roots[1].value == doctest::Approx(1.0).epsilon(1e-15));

    const auto cubic = solve_quartic_real(from_roots(2.0, {1.0, 2.0, 3.0}));
    REQUIRE(cubic.count() == 3);
    CHECK(cubic.values()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cubic.values()[2] == doctest::Approx(3.0).epsilon(1e-14));

    CHECK(solve_quartic_real(Poly4{{1.0, 0.0, 1.0, 0.0, 0.0}}).roots.empty());
    CHECK(solve_quartic_real(Poly4{{3.0, 0.0, 0.0, 0.0, 0.0}}).roots.empty());
    CHECK_THROWS_AS(solve_quartic_real(Poly4{}), ZeroPolynomial);
}

TEST_CASE("solve_quartic_real: double root from (X-0.25)^2 (X^2+1)") {
    // (X^2 - 0.5 X + 0.0625)(X^2 + 1)
    const Poly4 p{{0.0625, -0.5, 1.0625, -0.5, 1.0}};
    const auto roots = solve_quartic_real(p);
    REQUIRE(roots.roots.size() == 1);
    CHECK(roots.roots[0].multiplicity == 2);
    CHECK(roots.roots[0].value == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("solve_quartic_real: multiple and zero roots") {
    const auto quad = solve_quartic_real(from_roots(1.0, {1.0, 1.0, 1.0, 1.0}));
    REQUIRE(quad.roots.size() == 1);
    CHECK(quad.roots[0].multiplicity == 4);
    CHECK(quad.roots[0].value == doctest::Approx(1.0).epsilon(1e-12));

    const auto zeros = solve_quartic_real(Poly4{{0.0, 0.0, 0.0, -1.0, 1.0}});
    REQUIRE(zeros.roots.size() == 2);
    CHECK(zeros.roots[0].value == 0.0);
    CHECK(zeros.roots[0].multiplicity == 3);
    CHECK(zeros.roots[1].value == doctest::Approx(1.0));
}

TEST_CASE("solve_quartic_real: degenerate leading coefficient falls through") {
    const auto roots = solve_quartic_real(Poly4{{-0.5, 1.0, 0.0, 0.0, 1e-20}});
    REQUIRE(roots.roots.size() == 1);
    CHECK(roots.roots[0].value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("solve_quartic_real: Fig. 2 quartic matches bisection") {
    const Poly4 q = death_quartics(kFig2State, 0.8).q_z;
    const auto inside = roots_in_unit_interval(solve_quartic_real(q));
    REQUIRE(inside.size() == 1);
    CHECK_FALSE(inside[0].boundary);
    const double reference = oracle::bisect([&](double x) { return q(x); }, 0.0, 1.0);
    CHECK(std::abs(inside[0].value - reference) < 1e-9);
    // 40-digit mpmath bisection on a(t) d(t) - z^2, quoted a and d
    CHECK(std::abs(inside[0].value - 0.60056765406455298) < 1e-12);
}

TEST_CASE("solve_quartic_real: planted roots in (0,1) are recovered") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int trials = 0;
    while (trials < 2000) {
        double r[4];
        for (double& v : r) v = unit(rng);
        std::sort(r, r + 4);
        if (r[1] - r[0] < 1e-2 || r[2] - r[1] < 1e-2 || r[3] - r[2] < 1e-2) continue;
        ++trials;
        const double lead = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + 10.0 * unit(rng));
        const auto found = solve_quartic_real(from_roots(lead, {r[0], r[1], r[2], r[3]})).values();
        REQUIRE(found.size() == 4);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(found[static_cast<std::size_t>(k)] - r[k]) < 1e-9);
    }
}

TEST_CASE("solve_quartic_real: residual bound holds on random quartics") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int i = 0; i < 2000; ++i) {
        Poly4 p;
        for (double& c : p.c) c = g(rng);
        const auto roots = solve_quartic_real(p);
        double prev = -INFINITY;
        for (const auto& r : roots.roots) {
            CHECK(r.value >= prev);
            prev = r.value;
            const double size = std::max(1.0, std::abs(r.value));
            CHECK(r.residual <= 1e-9 * std::max(1.0, p.scale()) * std::pow(size, 4));
        }
        CHECK(roots.count() % 2 == 0);  // real quartic: complex roots pair up
    }
}

TEST_CASE("roots_in_unit_interval flags the endpoints") {
    RootSet set;
    set.roots = {{-0.5, 1, 0.0}, {1e-13, 1, 0.0}, {0.5, 2, 0.0}, {1.0 - 1e-13, 1, 0.0}, {1.5, 1, 0.0}};
    const auto inside = roots_in_unit_interval(set);
    REQUIRE(inside.size() == 3);
    CHECK(inside[0].boundary);
    CHECK_FALSE(inside[1].boundary);
    CHECK(inside[1].multiplicity == 2);
    CHECK(inside[2].boundary);
}

TEST_CASE("refine_bracketed_root") {
    CHECK(refine_bracketed_root([](double x) { return x - 0.5; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(refine_bracketed_root([](double x) { return x * x + 1.0; }, 0.0, 1.0), NoSignChange);

    const Poly4 q = death_quartics(kFig2State, 0.8).q_z;
    const double refined = refine_bracketed_root([&](double x) { return q(x); }, 0.0, 1.0);
    const auto solved = roots_in_unit_interval(solve_quartic_real(q));
    CHECK(std::abs(refined - solved.at(0).value) < 1e-9);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double lo = unit(rng);
        const double hi = lo + 0.01 + std::abs(unit(rng));
        const double root = lo + (hi - lo) * std::abs(unit(rng)) / 3.0;
        int calls = 0;
        bool inside = true;
        auto f = [&](double x) {
            ++calls;
            inside = inside && x >= lo && x <= hi;
            return std::tanh(5.0 * (x - root)) + 0.1 * (x - root);
        };
        const double x = refine_bracketed_root(f, lo, hi, 1e-14);
        CHECK(inside);
        CHECK(x >= lo);
        CHECK(x <= hi);
        CHECK(std::abs(x - root) < 1e-12);
    }
}

TEST_CASE("rk4_step") {
    const std::array<double, 3> y{1.0, -2.0, 0.5};
    CHECK(rk4_step([](const std::array<double, 3>&) { return std::array<double, 3>{}; }, y, 0.1) == y);

    std::array<double, 1> decay{1.0};
    for (int i = 0; i < 100; ++i) {
        decay = rk4_step([](const std::array<double, 1>& v) { return std::array<double, 1>{-v[0]}; }, decay, 0.01);
    }
    CHECK(std::abs(decay[0] - std::exp(-1.0)) < 1e-9);

    CHECK_THROWS_AS(rk4_step([](const std::array<double, 1>& v) { return v; }, decay, 0.0), DomainError);
    CHECK_THROWS_AS(
        rk4_step([](const std::array<double, 1>&) { return std::array<double, 1>{INFINITY}; }, decay, 0.1),
        NonFiniteState);
}

TEST_CASE("rk4 on the X-state system converges at fourth order") {
    const XState s0{0.3, 0.2, 0.1, 0.4, Complex(0.1, 0.05), Complex(0.2, -0.1)};
    for (double nbar : {0.0, 0.5, 2.0}) {
        const BathParams bath{1.0, nbar};
        auto max_error = [&](double dt) {
            double worst = 0.0;
            const double times[] = {0.5, 1.0, 2.0};
            const auto numeric = numeric_trajectory(s0, bath, times, dt);
            for (std::size_t k = 0; k < 3; ++k) {
                const XState exact = evolve_analytic(s0, bath, times[k]);
                worst = std::max({worst, std::abs(exact.a - numeric[k].a), std::abs(exact.b - numeric[k].b),
                                  std::abs(exact.d - numeric[k].d), std::abs(exact.z - numeric[k].z)});
            }
            return worst;
        };
        const double coarse = max_error(0.1);
        const double fine = max_error(0.05);
        CHECK(coarse / fine >= 12.0);
    }
}

TEST_CASE("eigvals_product4") {
    const auto identity = eigvals_product4(Matrix4c::Identity());
    for (double v : identity) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    Matrix4c diag = Matrix4c::Zero();
    diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
    const auto d = eigvals_product4(diag);
    CHECK(d[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(d[3] == doctest::Approx(0.1).epsilon(1e-14));

    const Matrix4c phi_plus = xstate_entries({0.5, 0.0, 0.0, 0.5, 0.0, 0.5});
    const auto bell = eigvals_product4(phi_plus * spin_flip(phi_plus));
    CHECK(bell[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bell[1] == 0.0);
    CHECK(bell[2] == 0.0);
    CHECK(bell[3] == 0.0);

    Matrix4c rotation = Matrix4c::Zero();
    rotation(0, 1) = -1.0;
    rotation(1, 0) = 1.0;
    CHECK_THROWS_AS(eigvals_product4(rotation), ComplexSpectrum);
}

TEST_CASE("eigvals_product4 sums to the trace of rho * rho~") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const Matrix4c rho = oracle::random_density_matrix(rng);
        const Matrix4c product = rho * spin_flip(rho);
        const auto values = eigvals_product4(product);
        const double sum = values[0] + values[1] + values[2] + values[3];
        CHECK(std::abs(sum - product.trace().real()) < 1e-9);
        for (double v : values) CHECK(v >= 0.0);
    }
}
