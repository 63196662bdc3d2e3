#include "esdlab/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "esdlab/dynamics.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/esd.hpp"

namespace esdlab {

namespace {

double parse_number(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("not a number: \"" + std::string(text) + "\"");
    }
    if (!std::isfinite(value)) throw ParseError("non-finite number: \"" + std::string(text) + "\"");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

void require_unit(double v, std::string_view what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParamOutOfRange(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

void require_param_count(std::string_view name, std::span<const double> params, std::size_t n) {
    if (params.size() != n) {
        throw ParamOutOfRange(std::string(name) + " takes " + std::to_string(n) + " parameter(s), got " +
                              std::to_string(params.size()));
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

XState ye_state(YeParams p) {
    require_unit(p.alpha, "alpha");
    const double third = 1.0 / 3.0;
    return {p.alpha / 3.0, third, third, (1.0 - p.alpha) / 3.0, Complex(third), Complex(0.0)};
}

XState named_state(std::string_view name, std::span<const double> params) {
    XState s;
    if (name == "bell_phi_plus" || name == "bell_phi_minus") {
        require_param_count(name, params, 0);
        s.a = s.d = 0.5;
        s.w = name == "bell_phi_plus" ? 0.5 : -0.5;
    } else if (name == "bell_psi_plus" || name == "bell_psi_minus") {
        require_param_count(name, params, 0);
        s.b = s.c = 0.5;
        s.z = name == "bell_psi_plus" ? 0.5 : -0.5;
    } else if (name == "werner") {
        require_param_count(name, params, 1);
        const double p = params[0];
        require_unit(p, "werner p");
        s.a = s.d = (1.0 - p) / 4.0;
        s.b = s.c = (1.0 + p) / 4.0;
        s.z = -p / 2.0;
    } else if (name == "mems") {
        require_param_count(name, params, 1);
        const double c = params[0];
        require_unit(c, "mems concurrence");
        if (c >= 2.0 / 3.0) {
            s.a = s.d = c / 2.0;
            s.c = 1.0 - c;
        } else {
            s.a = s.d = 1.0 / 3.0;
            s.c = 1.0 / 3.0;
        }
        s.w = c / 2.0;
    } else if (name == "ye") {
        require_param_count(name, params, 1);
        return ye_state({params[0]});
    } else {
        throw UnknownFamily("unknown state family \"" + std::string(name) + "\"");
    }
    require_valid(s);
    return s;
}

XState parse_family_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string_view::npos) {
        for (auto part : split(spec.substr(colon + 1), ',')) params.push_back(parse_number(part));
    }
    return named_state(name, params);
}

std::vector<double> parse_range(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ParseError("range must be start:stop:step, got \"" + std::string(text) + "\"");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0)) throw DomainError("range step must be > 0");
    if (stop < start) throw DomainError("range stop must be >= start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
    return grid;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_number(part));
    return out;
}

void require_grid(std::span<const double> grid, std::string_view what) {
    if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw DomainError(std::string(what) + " grid has a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw DomainError(std::string(what) + " grid must be strictly increasing");
        }
    }
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ParseError("format must be csv or json");
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::json doc;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    return doc.dump() + "\n";
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file " + path.string());
    out << text;
    if (!out) throw ParseError("failed writing " + path.string());
}

void write_table(const Table& table, const std::filesystem::path& path, OutputFormat format) {
    write_text(format == OutputFormat::Csv ? to_csv(table) : to_json(table), path);
}

Table fig2_data(double nbar, double a0, double d0, double zmag, std::span<const double> x_grid) {
    require_grid(x_grid, "X");
    for (double x : x_grid) (void)XCoordinate(x);
    XState s0;
    s0.a = a0;
    s0.d = d0;
    s0.b = s0.c = (1.0 - a0 - d0) / 2.0;
    s0.z = zmag;
    require_valid(s0);
    const auto q = death_quartics(s0, nbar).q_z;

    Table table{{"X", "q_z"}, {}};
    for (double x : x_grid) table.rows.push_back({x, q(x)});
    return table;
}

Table run_sweep(const SweepSpec& spec, unsigned threads) {
    if (spec.family != "ye") throw UnknownFamily("sweeps support the ye family only");
    require_grid(spec.alpha, "alpha");
    require_grid(spec.nbar, "nbar");
    require_grid(spec.x_grid, "X");
    for (double a : spec.alpha) require_unit(a, "alpha");
    for (double n : spec.nbar) {
        if (n < 0.0) throw DomainError("nbar must be >= 0");
    }
    for (double x : spec.x_grid) {
        if (!(x > 0.0 && x <= 1.0)) throw DomainError("X grid must lie in (0, 1]");
    }
    const BathParams probe{spec.gamma, 0.0};
    require_valid(probe);

    const std::size_t nx = spec.x_grid.size();
    const std::size_t na = spec.alpha.size();
    const std::size_t tasks = spec.nbar.size() * na;
    Table table{{"nbar", "alpha", "X", "C"}, std::vector<std::vector<double>>(tasks * nx)};

    parallel_for(tasks, threads, [&](std::size_t task) {
        const double nbar = spec.nbar[task / na];
        const double alpha = spec.alpha[task % na];
        const auto prop = analytic_coefficients(ye_state({alpha}), nbar);
        for (std::size_t k = 0; k < nx; ++k) {
            const double x = spec.x_grid[k];
            table.rows[task * nx + k] = {nbar, alpha, x, concurrence_x(prop.evaluate(x)).value()};
        }
    });
    return table;
}

Table fig3_data(std::span<const double> alpha_grid, std::span<const double> x_grid,
                std::span<const double> nbar_list, unsigned threads) {
    SweepSpec spec;
    spec.alpha.assign(alpha_grid.begin(), alpha_grid.end());
    spec.x_grid.assign(x_grid.begin(), x_grid.end());
    spec.nbar.assign(nbar_list.begin(), nbar_list.end());
    return run_sweep(spec, threads);
}

Table evolve_table(const XState& s0, const BathParams& bath, const EvolveSpec& spec) {
    require_valid(s0);
    require_valid(bath);
    if (!std::isfinite(spec.t_max) || spec.t_max < 0.0) throw DomainError("t-max must be finite and >= 0");
    if (spec.samples < 1) throw DomainError("samples must be >= 1");
    if (spec.numeric && !(spec.dt > 0.0 && std::isfinite(spec.dt))) throw DomainError("dt must be > 0");

    std::vector<double> times(static_cast<std::size_t>(spec.samples));
    for (int i = 0; i < spec.samples; ++i) {
        times[static_cast<std::size_t>(i)] =
            spec.samples == 1 ? 0.0 : spec.t_max * static_cast<double>(i) / (spec.samples - 1);
    }
    std::vector<XState> states;
    if (spec.numeric) {
        states = numeric_trajectory(s0, bath, times, spec.dt);
    } else {
        const auto prop = analytic_coefficients(s0, bath.nbar);
        for (double t : times) states.push_back(prop.evaluate(x_of_t(t, bath)));
    }

    Table table{{"t", "X", "a", "b", "c", "d", "z_re", "z_im", "w_re", "w_im", "C"}, {}};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const XState& s = states[i];
        table.rows.push_back({times[i], x_of_t(times[i], bath).value(), s.a, s.b, s.c, s.d, s.z.real(),
                              s.z.imag(), s.w.real(), s.w.imag(), concurrence_x(s).value()});
    }
    return table;
}

}  // namespace esdlab
