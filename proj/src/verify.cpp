#include "esdlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "esdlab/dynamics.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/esd.hpp"
#include "esdlab/experiments.hpp"
#include "esdlab/sampling.hpp"

namespace esdlab {

namespace {

double max_elementwise(const XState& l, const XState& r) {
    return std::max({std::abs(l.a - r.a), std::abs(l.b - r.b), std::abs(l.c - r.c), std::abs(l.d - r.d),
                     std::abs(l.z - r.z), std::abs(l.w - r.w)});
}

CheckResult finish(std::string name, double worst, double tol, std::string detail = {}) {
    CheckResult r{std::move(name), worst <= tol ? CheckStatus::Pass : CheckStatus::Fail, worst, tol,
                  std::move(detail)};
    return r;
}

CheckResult analytic_vs_numeric(std::mt19937_64& rng, double perturbation) {
    const double nbars[] = {0.0, 0.5, 2.0};
    const double times[] = {0.1, 1.0, 3.0};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const XState s0 = random_xstate(rng);
        for (double nbar : nbars) {
            const BathParams bath{1.0, nbar};
            auto prop = analytic_coefficients(s0, nbar);
            prop.a.c1 += perturbation;
            const auto numeric = numeric_trajectory(s0, bath, times, default_dt(bath));
            for (std::size_t k = 0; k < std::size(times); ++k) {
                worst = std::max(worst, max_elementwise(prop.evaluate(x_of_t(times[k], bath)), numeric[k]));
            }
        }
    }
    return finish("analytic_vs_numeric", worst, 1e-8);
}

CheckResult physicality(std::mt19937_64& rng) {
    double worst_trace = 0.0;
    double worst_negative = 0.0;
    for (int i = 0; i < 50; ++i) {
        const XState s0 = random_xstate(rng);
        for (double nbar : {0.0, 0.5, 2.0}) {
            const BathParams bath{1.0, nbar};
            for (double t : {0.1, 0.5, 1.0, 3.0, 5.0}) {
                const XState s = evolve_analytic(s0, bath, t);
                worst_trace = std::max(worst_trace, std::abs(s.trace() - 1.0));
                worst_negative = std::max(worst_negative, -min_hermitian_eigenvalue(xstate_entries(s)));
            }
        }
    }
    // Report the combined margin as a ratio of each bound.
    const double worst = std::max(worst_trace / 1e-12, worst_negative / 1e-9);
    std::ostringstream detail;
    detail << "trace error " << worst_trace << ", most negative eigenvalue " << -worst_negative;
    return finish("physicality", worst, 1.0, detail.str());
}

CheckResult lindblad_consistency(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const XState s = random_xstate(rng);
        for (double nbar : {0.0, 0.3, 2.0}) {
            const BathParams bath{1.3, nbar};
            const Matrix4c full = lindblad_rhs_full(xstate_entries(s), bath);
            const Matrix4c reduced = xstate_entries(ode_rhs_x(s, bath));
            worst = std::max(worst, (full - reduced).cwiseAbs().maxCoeff());
        }
    }
    return finish("lindblad_vs_xstate_rhs", worst, 1e-12);
}

CheckResult concurrence_dual_path(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const XState s = random_xstate(rng);
        worst = std::max(worst, std::abs(concurrence_x(s).value() -
                                         concurrence_general(xstate_to_matrix(s)).value()));
    }
    return finish("concurrence_dual_path", worst, 1e-10);
}

CheckResult closed_form_vs_general(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> nbar_dist(0.0, 5.0);
    double worst = 0.0;
    int mismatched = 0;
    int checked = 0;
    while (checked < 100) {
        const XState s = random_wzero_xstate(rng);
        const double nbar = nbar_dist(rng);
        std::vector<double> closed;
        try {
            closed = closed_form_roots_wzero(s.a, s.d, std::abs(s.z), nbar);
        } catch (const DegenerateDenominator&) {
            continue;
        }
        const auto q = death_quartics(s, nbar).q_z;
        const auto general = solve_quartic_real(q).values();
        ++checked;
        if (closed.size() != general.size()) {
            ++mismatched;
            continue;
        }
        for (std::size_t k = 0; k < closed.size(); ++k) {
            worst = std::max(worst, std::abs(closed[k] - general[k]) / std::max(1.0, std::abs(closed[k])));
        }
    }
    auto result = finish("closed_form_vs_general_roots", worst, 1e-9);
    if (mismatched > 0) {
        result.status = CheckStatus::Fail;
        result.detail = std::to_string(mismatched) + " root-count mismatches";
    }
    return result;
}

CheckResult thermal_floor_anchor(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> nbar_dist(0.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const XState s = random_xstate(rng);
        const double nbar = nbar_dist(rng);
        const double expected = -nbar * nbar * (nbar + 1.0) * (nbar + 1.0) / std::pow(2.0 * nbar + 1.0, 4);
        const auto q = death_quartics(s, nbar);
        worst = std::max({worst, std::abs(q.q_z(0.0) - expected), std::abs(q.q_w(0.0) - expected)});
    }
    return finish("thermal_floor_at_X0", worst, 1e-12);
}

CheckResult finite_death(std::mt19937_64& rng, double nbar) {
    char name[64];
    std::snprintf(name, sizeof name, "finite_death_theorem_nbar_%g", nbar);
    if (nbar == 0.0) {
        return {name, CheckStatus::NotApplicable, 0.0, 0.0, "theorem requires nbar > 0"};
    }
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        const XState s = random_entangled_xstate(rng);
        try {
            const auto cert = certify_finite_death(s, nbar);
            const auto report = esd_report(s, {1.0, nbar});
            const bool ok = cert.root > 0.0 && cert.root < 1.0 && !report.asymptotic && report.death_x &&
                            *report.death_x > 0.0 && *report.death_x < 1.0 && std::isfinite(report.death_time);
            if (!ok) ++failures;
        } catch (const Error&) {
            ++failures;
        }
    }
    return {name, failures == 0 ? CheckStatus::Pass : CheckStatus::Fail, static_cast<double>(failures), 0.0,
            std::to_string(failures) + " of 200 states without finite death"};
}

CheckResult zero_temperature_boundary() {
    int wrong = 0;
    for (int i = 0; i <= 30; ++i) {
        const double alpha = i / 30.0;
        if (std::abs(alpha - 1.0 / 3.0) < 1e-9) continue;  // boundary, not asserted
        const bool asymptotic = esd_report(ye_state({alpha}), {1.0, 0.0}).asymptotic;
        if (asymptotic != (alpha < 1.0 / 3.0)) ++wrong;
    }
    return {"ye_zero_temperature_boundary", wrong == 0 ? CheckStatus::Pass : CheckStatus::Fail,
            static_cast<double>(wrong), 0.0, std::to_string(wrong) + " misclassified alpha values"};
}

}  // namespace

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::NotApplicable: return "not applicable";
    }
    return "?";
}

bool VerifyReport::passed() const noexcept {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

VerifyReport run_verify(const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    VerifyReport report;
    auto guarded = [&](const char* name, auto&& check) {
        try {
            report.checks.push_back(check());
        } catch (const std::exception& e) {
            report.checks.push_back({name, CheckStatus::Fail, 0.0, 0.0, e.what()});
        }
    };
    guarded("analytic_vs_numeric", [&] { return analytic_vs_numeric(rng, options.propagator_perturbation); });
    guarded("physicality", [&] { return physicality(rng); });
    guarded("lindblad_vs_xstate_rhs", [&] { return lindblad_consistency(rng); });
    guarded("concurrence_dual_path", [&] { return concurrence_dual_path(rng); });
    guarded("closed_form_vs_general_roots", [&] { return closed_form_vs_general(rng); });
    guarded("thermal_floor_at_X0", [&] { return thermal_floor_anchor(rng); });
    for (double nbar : options.theorem_nbar) {
        guarded("finite_death_theorem", [&] { return finite_death(rng, nbar); });
    }
    guarded("ye_zero_temperature_boundary", [] { return zero_temperature_boundary(); });
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream os;
    for (const auto& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-40s %-15s max_error=%.3e tol=%.1e", c.name.c_str(), to_string(c.status),
                      c.max_error, c.tolerance);
        os << line;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << '\n';
    }
    os << (report.passed() ? "all checks passed" : "some checks FAILED") << '\n';
    return os.str();
}

}  // namespace esdlab
