#pragma once

// State families, figure data and parameter sweeps.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esdlab/core_state.hpp"

namespace esdlab {

struct YeParams {
    double alpha = 0.0;  // in [0, 1]
};

/// (1/3) [[alpha,0,0,0],[0,1,1,0],[0,1,1,0],[0,0,0,1-alpha]]
XState ye_state(YeParams p);

/// Known families: bell_phi_plus, bell_phi_minus, bell_psi_plus,
/// bell_psi_minus (no parameters), werner (p in [0,1]), mems (c in [0,1]),
/// ye (alpha in [0,1]).
///
/// werner(p) = p |Psi-><Psi-| + (1-p) I/4.
/// mems(c) is the Munro-James-White-Kwiat maximally entangled mixed state
/// of concurrence c:
///   c >= 2/3: a = d = w = c/2, population of |01> = 1 - c
///   c <  2/3: a = d = 1/3, w = c/2, population of |01> = 1/3
XState named_state(std::string_view name, std::span<const double> params = {});

/// "family" or "family:p1,p2,..." (e.g. "werner:0.8", "ye:0.2").
XState parse_family_spec(std::string_view spec);

/// Inclusive "start:stop:step" grid, generated as start + i*step.
std::vector<double> parse_range(std::string_view text);
std::vector<double> parse_list(std::string_view text);

/// Throws DomainError unless nonempty, finite and strictly increasing.
void require_grid(std::span<const double> grid, std::string_view what);

/// Numeric table written as CSV (17 significant digits) or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);
void write_table(const Table& table, const std::filesystem::path& path, OutputFormat format);
void write_text(const std::string& text, const std::filesystem::path& path);

/// Rows (X, q_z(X)). q_z depends only on a0, d0, |z0| and nbar; the
/// remaining population is split evenly between b0 and c0.
Table fig2_data(double nbar, double a0, double d0, double zmag, std::span<const double> x_grid);

inline constexpr double kFig2Nbar = 0.8;
inline constexpr double kFig2A0 = 0.1;
inline constexpr double kFig2D0 = 0.05;
inline constexpr double kFig2Z0 = 0.3;

struct SweepSpec {
    std::string family = "ye";
    std::vector<double> alpha;
    std::vector<double> nbar;
    std::vector<double> x_grid;
    double gamma = 1.0;
};

/// Rows (nbar, alpha, X, C) in grid order: nbar outermost, X innermost.
/// Grid points are evaluated on `threads` workers (0 = hardware
/// concurrency); the output does not depend on the thread count.
Table run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Concurrence of the ye family over the given grids.
Table fig3_data(std::span<const double> alpha_grid, std::span<const double> x_grid,
                std::span<const double> nbar_list, unsigned threads = 0);

struct EvolveSpec {
    double t_max = 5.0;
    int samples = 101;
    bool numeric = false;
    double dt = 1e-3;
};

/// Rows (t, X, a, b, c, d, z_re, z_im, w_re, w_im, C) at evenly spaced times.
Table evolve_table(const XState& s0, const BathParams& bath, const EvolveSpec& spec);

}  // namespace esdlab
