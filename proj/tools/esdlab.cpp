// esdlab: command-line front end.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or
// validation error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "esdlab/errors.hpp"
#include "esdlab/esd.hpp"
#include "esdlab/experiments.hpp"
#include "esdlab/state_io.hpp"
#include "esdlab/verify.hpp"

namespace {

using namespace esdlab;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

const CLI::Validator kFinite(
    [](std::string& input) -> std::string {
        try {
            std::size_t used = 0;
            const double v = std::stod(input, &used);
            if (used != input.size()) return "not a number: " + input;
            if (!std::isfinite(v)) return "value must be finite: " + input;
        } catch (const std::exception&) {
            return "not a number: " + input;
        }
        return {};
    },
    "FINITE");

XState load_state(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return load_xstate(arg);
    return parse_family_spec(arg);
}

void emit(const std::string& text, const std::optional<std::string>& out) {
    if (out) {
        write_text(text, *out);
    } else {
        std::cout << text;
    }
}

void emit(const Table& table, const std::optional<std::string>& out, const std::string& format) {
    const OutputFormat fmt = parse_format(format);
    emit(fmt == OutputFormat::Csv ? to_csv(table) : to_json(table), out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement sudden death of two qubits in thermal reservoirs", "esdlab"};
    app.require_subcommand(1);

    // evolve
    std::string state_arg;
    double nbar = 0.0;
    double gamma = 1.0;
    double t_max = 5.0;
    std::optional<double> dt;
    bool numeric = false;
    int samples = 101;
    std::optional<std::string> out;
    std::string format = "csv";

    auto* evolve = app.add_subcommand("evolve", "Trajectory of the X-state elements and concurrence");
    evolve->add_option("--state", state_arg, "State JSON file or family[:params]")->required();
    evolve->add_option("--nbar", nbar, "Mean reservoir occupation")->required()->check(kFinite);
    evolve->add_option("--gamma", gamma, "Spontaneous decay rate")->check(kFinite);
    evolve->add_option("--t-max", t_max, "Final time")->required()->check(kFinite);
    evolve->add_option("--dt", dt, "RK4 step (default 1e-3/gamma)")->check(kFinite);
    evolve->add_flag("--numeric", numeric, "Integrate with RK4 instead of the closed form");
    evolve->add_option("--samples", samples, "Number of output rows");
    evolve->add_option("--out", out, "Output path (stdout if omitted)");
    evolve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // death
    bool closed_form = false;
    auto* death = app.add_subcommand("death", "Sudden-death report (roots, death X and time)");
    death->add_option("--state", state_arg, "State JSON file or family[:params]")->required();
    death->add_option("--nbar", nbar, "Mean reservoir occupation")->required()->check(kFinite);
    death->add_option("--gamma", gamma, "Spontaneous decay rate")->check(kFinite);
    death->add_flag("--closed-form", closed_form, "Use the closed-form roots when w = 0");
    death->add_option("--out", out, "Output path (stdout if omitted)");

    // sweep
    std::string family = "ye";
    std::string alpha_range = "0:1:0.05";
    std::string nbar_list = "0,0.2,1";
    std::string x_range = "0.01:1:0.01";
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Concurrence over an (nbar, alpha, X) grid");
    sweep->add_option("--family", family, "State family (ye)");
    sweep->add_option("--alpha", alpha_range, "start:stop:step");
    sweep->add_option("--nbar", nbar_list, "Comma-separated list");
    sweep->add_option("--x-grid", x_range, "start:stop:step inside (0, 1]");
    sweep->add_option("--gamma", gamma, "Spontaneous decay rate")->check(kFinite);
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep->add_option("--out", out, "Output path (stdout if omitted)");
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // fig2
    double fig2_nbar = kFig2Nbar;
    double fig2_a0 = kFig2A0;
    double fig2_d0 = kFig2D0;
    double fig2_z0 = kFig2Z0;
    std::string fig2_x = "0:1:0.01";
    auto* fig2 = app.add_subcommand("fig2", "q_z(X) on [0, 1]");
    fig2->add_option("--nbar", fig2_nbar)->check(kFinite);
    fig2->add_option("--a0", fig2_a0)->check(kFinite);
    fig2->add_option("--d0", fig2_d0)->check(kFinite);
    fig2->add_option("--z0", fig2_z0, "|z0|")->check(kFinite);
    fig2->add_option("--x-grid", fig2_x, "start:stop:step inside [0, 1]");
    fig2->add_option("--out", out, "Output path (stdout if omitted)");
    fig2->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // fig3
    std::string fig3_nbar = "0,0.2,1,100";
    auto* fig3 = app.add_subcommand("fig3", "Concurrence of the ye family over (nbar, alpha, X)");
    fig3->add_option("--alpha", alpha_range, "start:stop:step");
    fig3->add_option("--nbar", fig3_nbar, "Comma-separated list");
    fig3->add_option("--x-grid", x_range, "start:stop:step inside (0, 1]");
    fig3->add_option("--threads", threads, "Worker threads (0 = all cores)");
    fig3->add_option("--out", out, "Output path (stdout if omitted)");
    fig3->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // verify
    std::uint64_t seed = VerifyOptions{}.seed;
    double perturbation = 0.0;
    auto* verify = app.add_subcommand("verify", "Run the cross-check suite");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--perturb-propagator", perturbation,
                       "Self-test: offset one propagator coefficient (must make the suite fail)")
        ->check(kFinite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*evolve) {
            EvolveSpec spec{t_max, samples, numeric, dt.value_or(1e-3 / gamma)};
            emit(evolve_table(load_state(state_arg), {gamma, nbar}, spec), out, format);
        } else if (*death) {
            const auto report = esd_report(load_state(state_arg), {gamma, nbar}, {closed_form});
            emit(esd_report_to_json(report) + "\n", out);
        } else if (*sweep) {
            SweepSpec spec{family, parse_range(alpha_range), parse_list(nbar_list), parse_range(x_range), gamma};
            emit(run_sweep(spec, threads), out, format);
        } else if (*fig2) {
            const auto grid = parse_range(fig2_x);
            emit(fig2_data(fig2_nbar, fig2_a0, fig2_d0, fig2_z0, grid), out, format);
        } else if (*fig3) {
            emit(fig3_data(parse_range(alpha_range), parse_range(x_range), parse_list(fig3_nbar), threads), out,
                 format);
        } else if (*verify) {
            VerifyOptions options;
            options.seed = seed;
            options.propagator_perturbation = perturbation;
            const auto report = run_verify(options);
            std::cout << format_report(report);
            return report.passed() ? 0 : kExitCheckFailed;
        }
    } catch (const esdlab::Error& e) {
        std::cerr << "esdlab: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
