#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/esd.hpp"
#include "esdlab/experiments.hpp"
#include "esdlab/verify.hpp"

using namespace esdlab;

TEST_CASE("ye_state") {
    CHECK(ye_state({0.0}) == XState{0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
    CHECK(ye_state({1.0}).a == doctest::Approx(1.0 / 3));
    CHECK(ye_state({1.0}).d == 0.0);
    CHECK_THROWS_AS(ye_state({1.5}), ParamOutOfRange);
    CHECK_THROWS_AS(ye_state({-0.1}), ParamOutOfRange);
}

TEST_CASE("named_state") {
    CHECK(named_state("bell_psi_plus") == XState{0.0, 0.5, 0.5, 0.0, 0.5, 0.0});
    CHECK(named_state("bell_psi_minus").z == Complex(-0.5));
    CHECK(named_state("bell_phi_plus").w == Complex(0.5));
    CHECK(named_state("bell_phi_minus").w == Complex(-0.5));

    const double one[] = {1.0};
    const double third[] = {1.0 / 3.0};
    const double zero[] = {0.0};
    CHECK(concurrence_x(named_state("werner", one)).value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(concurrence_x(named_state("werner", third)).value() < 1e-15);
    CHECK(named_state("werner", zero) == XState{0.25, 0.25, 0.25, 0.25, 0.0, 0.0});

    for (double c : {0.0, 0.3, 2.0 / 3.0, 0.8, 1.0}) {
        const double p[] = {c};
        CHECK(concurrence_x(named_state("mems", p)).value() == doctest::Approx(c).epsilon(1e-14));
    }

    CHECK_THROWS_AS(named_state("ghz"), UnknownFamily);
    CHECK_THROWS_AS(named_state("werner"), ParamOutOfRange);
    const double big[] = {1.2};
    CHECK_THROWS_AS(named_state("werner", big), ParamOutOfRange);
    CHECK_THROWS_AS(named_state("bell_psi_plus", one), ParamOutOfRange);

    CHECK(parse_family_spec("werner:0.8") == named_state("werner", std::array{0.8}));
    CHECK(parse_family_spec("ye:0.2") == ye_state({0.2}));
    CHECK_THROWS_AS(parse_family_spec("werner:abc"), ParseError);
    CHECK_THROWS_AS(parse_family_spec("werner:nan"), ParseError);
}

TEST_CASE("grids") {
    const auto grid = parse_range("0:1:0.05");
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[7] == 7 * 0.05);
    CHECK(parse_range("0.01:1:0.01").size() == 100);
    CHECK(parse_list("0, 0.2,1") == std::vector<double>{0.0, 0.2, 1.0});

    CHECK_THROWS_AS(parse_range("0:1"), ParseError);
    CHECK_THROWS_AS(parse_range("0:1:0"), DomainError);
    CHECK_THROWS_AS(parse_range("1:0:0.1"), DomainError);
    CHECK_THROWS_AS(parse_range("0:inf:0.1"), ParseError);
    CHECK_THROWS_AS(parse_list("0,,1"), ParseError);

    CHECK_THROWS_AS(require_grid(std::vector<double>{}, "X"), DomainError);
    CHECK_THROWS_AS(require_grid(std::vector<double>{0.1, 0.1}, "X"), DomainError);
    CHECK_NOTHROW(require_grid(std::vector<double>{0.1, 0.2}, "X"));
}

TEST_CASE("table output") {
    const Table table{{"x", "y"}, {{0.1, 1.0 / 3.0}, {2.0, -1e-300}}};
    CHECK(to_csv(table) == "x,y\n0.10000000000000001,0.33333333333333331\n2,-1e-300\n");
    std::istringstream csv(to_csv(table));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    CHECK(std::stod(row.substr(row.find(',') + 1)) == 1.0 / 3.0);

    const auto json = nlohmann::json::parse(to_json(table));
    CHECK(json.at("columns") == nlohmann::json({"x", "y"}));
    CHECK(json.at("rows")[0][1].get<double>() == 1.0 / 3.0);

    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_format("xml"), ParseError);

    const auto path = std::filesystem::temp_directory_path() / "esdlab_table_test.csv";
    write_table(table, path, OutputFormat::Csv);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == to_csv(table));
    std::filesystem::remove(path);
}

TEST_CASE("fig2_data") {
    const auto grid = parse_range("0:1:0.01");
    const auto table = fig2_data(kFig2Nbar, kFig2A0, kFig2D0, kFig2Z0, grid);
    REQUIRE(table.rows.size() == 101);
    CHECK(std::abs(table.rows.front()[1] + 0.045376562445292532) < 1e-12);
    CHECK(std::abs(table.rows.back()[1] - 0.085) < 1e-15);

    int changes = 0;
    double crossing = 0.0;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if ((table.rows[i - 1][1] > 0.0) != (table.rows[i][1] > 0.0)) {
            ++changes;
            crossing = table.rows[i][0];
        }
    }
    CHECK(changes == 1);
    CHECK(crossing == doctest::Approx(0.61));

    // the b/c split does not enter q_z
    XState s0{kFig2A0, 0.6, 0.25, kFig2D0, kFig2Z0, 0.0};
    const auto report = esd_report(s0, {1.0, kFig2Nbar});
    REQUIRE(report.death_x.has_value());
    CHECK(std::abs(*report.death_x - 0.60056765406455298) < 1e-12);

    CHECK_THROWS_AS(fig2_data(0.8, 0.6, 0.6, 0.1, grid), NegativePopulation);
    CHECK_THROWS_AS(fig2_data(0.8, 0.1, 0.05, 0.3, parse_range("0:1.5:0.5")), DomainError);
}

TEST_CASE("fig3_data and sweeps") {
    const auto alpha = parse_range("0:1:0.05");
    const auto x = parse_range("0.01:1:0.01");
    const std::vector<double> nbar{0.0, 0.2, 1.0, 100.0};
    const auto table = fig3_data(alpha, x, nbar, 1);
    REQUIRE(table.rows.size() == alpha.size() * x.size() * nbar.size());
    CHECK(table.columns == std::vector<std::string>{"nbar", "alpha", "X", "C"});
    for (const auto& row : table.rows) {
        CHECK(row[3] >= 0.0);
        CHECK(row[3] <= 1.0);
    }
    // grid order: nbar outermost, X innermost
    CHECK(table.rows[1][2] == x[1]);
    CHECK(table.rows[x.size()][1] == alpha[1]);
    CHECK(table.rows[alpha.size() * x.size()][0] == 0.2);

    // nbar = 0, alpha <= 1/3: positive on every grid X
    for (const auto& row : table.rows) {
        if (row[0] == 0.0 && row[1] <= 1.0 / 3.0) CHECK(row[3] > 0.0);
        if (row[0] > 0.0) {
            const auto report = esd_report(ye_state({row[1]}), {1.0, row[0]});
            REQUIRE(report.death_x.has_value());
            if (row[2] < *report.death_x) CHECK(row[3] == 0.0);
        }
    }

    SweepSpec spec;
    spec.alpha = alpha;
    spec.nbar = nbar;
    spec.x_grid = x;
    CHECK(to_csv(run_sweep(spec, 1)) == to_csv(run_sweep(spec, 4)));
    CHECK(to_csv(run_sweep(spec, 3)) == to_csv(table));

    spec.family = "werner";
    CHECK_THROWS_AS(run_sweep(spec, 1), UnknownFamily);
    spec.family = "ye";
    spec.x_grid = {0.0, 0.5};
    CHECK_THROWS_AS(run_sweep(spec, 1), DomainError);
}

TEST_CASE("evolve_table") {
    const XState s0 = named_state("bell_psi_plus");
    const auto table = evolve_table(s0, {1.0, 1.0}, {1.0, 11, false, 1e-3});
    REQUIRE(table.rows.size() == 11);
    CHECK(table.columns.size() == 11);
    CHECK(table.rows.front()[0] == 0.0);
    CHECK(table.rows.back()[0] == 1.0);
    CHECK(table.rows.front()[10] == 1.0);
    // Bell Psi+ at nbar = 1 dies at t = 0.3105
    for (const auto& row : table.rows) CHECK((row[10] > 0.0) == (row[0] < 0.31045404513976656));

    const auto numeric = evolve_table(s0, {1.0, 1.0}, {1.0, 11, true, 1e-3});
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t k = 0; k < table.rows[i].size(); ++k) {
            CHECK(std::abs(table.rows[i][k] - numeric.rows[i][k]) < 1e-9);
        }
    }
    CHECK_THROWS_AS(evolve_table(s0, {1.0, 1.0}, {-1.0, 11, false, 1e-3}), DomainError);
    CHECK_THROWS_AS(evolve_table(s0, {1.0, 1.0}, {1.0, 0, false, 1e-3}), DomainError);
}

TEST_CASE("run_verify") {
    const auto report = run_verify();
    CHECK(report.passed());
    bool saw_not_applicable = false;
    for (const auto& check : report.checks) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.status != CheckStatus::Fail);
        if (check.name == "finite_death_theorem_nbar_0") {
            CHECK(check.status == CheckStatus::NotApplicable);
            saw_not_applicable = true;
        }
    }
    CHECK(saw_not_applicable);
    CHECK(format_report(report).find("FAIL") == std::string::npos);

    VerifyOptions mutated;
    mutated.propagator_perturbation = 1e-3;
    const auto broken = run_verify(mutated);
    CHECK_FALSE(broken.passed());
    for (const auto& check : broken.checks) {
        if (check.name == "analytic_vs_numeric") CHECK(check.status == CheckStatus::Fail);
    }
}
