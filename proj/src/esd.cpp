#include "esdlab/esd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "esdlab/dynamics.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"

namespace esdlab {

namespace {

std::vector<UnitIntervalRoot> unit_roots(const Poly4& q) {
    if (q.scale() == 0.0) return {};  // identically zero: never positive
    return roots_in_unit_interval(solve_quartic_real(q));
}

std::vector<UnitIntervalRoot> closed_form_unit_roots(const XState& s0, const Poly4& q_z, double nbar) {
    try {
        const auto roots = closed_form_roots_wzero(s0.a, s0.d, std::abs(s0.z), nbar);
        RootSet set;
        for (double r : roots) set.roots.push_back({r, 1, std::abs(q_z(r))});
        return roots_in_unit_interval(set);
    } catch (const DegenerateDenominator&) {
        return unit_roots(q_z);
    }
}

}  // namespace

double thermal_floor(double nbar) {
    const double p = nbar / (2.0 * nbar + 1.0);
    const double q = (nbar + 1.0) / (2.0 * nbar + 1.0);
    return -(p * q) * (p * q);
}

DeathQuartics death_quartics(const XState& s0, double nbar) {
    const auto prop = analytic_coefficients(s0, nbar);
    Poly4 z2;
    z2.c[2] = std::norm(s0.z);
    Poly4 w2;
    w2.c[2] = std::norm(s0.w);
    return {z2 - prop.a * prop.d, w2 - prop.b * prop.c};
}

DeathCertificate certify_finite_death(const XState& s0, double nbar) {
    require_valid(s0);
    if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("nbar must be finite and >= 0");
    if (nbar == 0.0) throw ZeroTemperature("the finite-death argument needs nbar > 0");
    const auto quartics = death_quartics(s0, nbar);
    const double at_one_z = quartics.q_z(1.0);
    const double at_one_w = quartics.q_w(1.0);
    if (!concurrence_x(s0).entangled() || std::max(at_one_z, at_one_w) <= 0.0) {
        throw NotEntangled("initial state has zero concurrence");
    }

    DeathCertificate cert;
    cert.quartic = at_one_z >= at_one_w ? DeathQuartic::Z : DeathQuartic::W;
    const Poly4& q = cert.quartic == DeathQuartic::Z ? quartics.q_z : quartics.q_w;
    cert.x_lo = 0.0;
    cert.x_hi = 1.0;
    cert.value_lo = q(0.0);
    cert.value_hi = q(1.0);
    cert.root = refine_bracketed_root([&q](double x) { return q(x); }, cert.x_lo, cert.x_hi);
    return cert;
}

EsdReport esd_report(const XState& s0, const BathParams& bath, EsdOptions options) {
    require_valid(s0);
    require_valid(bath);
    const auto quartics = death_quartics(s0, bath.nbar);

    EsdReport report;
    const bool use_closed_form = options.closed_form && s0.w == Complex(0.0);
    report.roots_z = use_closed_form ? closed_form_unit_roots(s0, quartics.q_z, bath.nbar)
                                     : unit_roots(quartics.q_z);
    report.roots_w = unit_roots(quartics.q_w);

    // Concurrence is positive iff max(q_z, q_w) > 0, so between consecutive
    // roots the sign is constant and one interior sample decides it.
    std::vector<double> breaks = {0.0, 1.0};
    for (const auto* roots : {&report.roots_z, &report.roots_w}) {
        for (const auto& r : *roots) {
            if (r.value > 0.0 && r.value < 1.0) breaks.push_back(r.value);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        const double mid = 0.5 * (lo + hi);
        const bool positive = std::max(quartics.q_z(mid), quartics.q_w(mid)) > 0.0;
        if (!positive) continue;
        if (!report.intervals.empty() && report.intervals.back().hi == lo) {
            report.intervals.back().hi = hi;
        } else {
            report.intervals.push_back({lo, hi});
        }
    }

    if (!report.intervals.empty() && report.intervals.front().lo == 0.0) {
        report.asymptotic = true;
        report.death_time = std::numeric_limits<double>::infinity();
    } else {
        const double death = report.intervals.empty() ? 1.0 : report.intervals.front().lo;
        report.death_x = death;
        report.death_time = t_of_x(XCoordinate(death), bath);
    }
    return report;
}

ClosedFormParameters closed_form_parameters(double a0, double d0, double zmag, double nbar) {
    const double m = 2.0 * nbar + 1.0;
    const double k = m * (a0 * (nbar + 1.0) + d0 * nbar) - nbar * (nbar + 1.0);
    ClosedFormParameters out;
    out.denominator = 4.0 * k;
    if (std::abs(out.denominator) <= 1e-12 * std::max(1.0, m * m)) {
        throw DegenerateDenominator("4{(2n+1)[a0(n+1)+d0 n] - n(n+1)} vanishes");
    }
    out.r = (1.0 + (a0 - d0) * m) / out.denominator;
    const double radicand = (1.0 - a0 - d0) * (1.0 - a0 - d0) + 4.0 * (zmag * zmag - a0 * d0);
    out.s = radicand >= 0.0 ? m * m * std::sqrt(radicand) / out.denominator
                            : std::numeric_limits<double>::quiet_NaN();
    out.t_squared = nbar * (nbar + 1.0) / k;
    return out;
}

std::vector<double> closed_form_roots_wzero(double a0, double d0, double zmag, double nbar) {
    for (double v : {a0, d0, zmag, nbar}) {
        if (!std::isfinite(v)) throw DomainError("closed-form inputs must be finite");
    }
    const auto params = closed_form_parameters(a0, d0, zmag, nbar);
    std::vector<double> roots;
    // An imaginary s leaves each quadratic with a non-real linear
    // coefficient; neither has a real root then.
    if (std::isnan(params.s)) return roots;

    for (double centre : {params.r + params.s, params.r - params.s}) {
        const double disc = centre * centre + params.t_squared;
        if (disc < 0.0) continue;
        // Larger-magnitude root first; the other from the product -t^2.
        const double big = centre + std::copysign(std::sqrt(disc), centre);
        roots.push_back(big);
        roots.push_back(big != 0.0 ? -params.t_squared / big : 0.0);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string esd_report_to_json(const EsdReport& report) {
    using nlohmann::json;
    auto roots = [](const std::vector<UnitIntervalRoot>& list) {
        json out = json::array();
        for (const auto& r : list) {
            out.push_back({{"value", r.value}, {"multiplicity", r.multiplicity}, {"boundary", r.boundary}});
        }
        return out;
    };
    json intervals = json::array();
    for (const auto& iv : report.intervals) intervals.push_back({iv.lo, iv.hi});

    json doc;
    doc["roots_z"] = roots(report.roots_z);
    doc["roots_w"] = roots(report.roots_w);
    doc["death_x"] = report.death_x ? json(*report.death_x) : json(nullptr);
    doc["death_time"] = report.asymptotic ? json(nullptr) : json(report.death_time);
    doc["intervals"] = std::move(intervals);
    doc["asymptotic"] = report.asymptotic;
    return doc.dump(2);
}

}  // namespace esdlab
