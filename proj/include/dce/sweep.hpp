#pragma once

// Parameter sweeps behind the single-stroke, asymptotic and window-comparison
// datasets. Grid points are independent; rows land in pre-indexed slots so the
// table never depends on the worker count.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dce/model.hpp"

namespace dce {

enum class SweepMode { SingleStroke, Asymptotic, Windows };

std::string to_string(SweepMode m);
SweepMode parse_sweep_mode(const std::string& s);

struct WindowSpec {
    WindowKind kind = WindowKind::Rectangular;
    double alpha = 1.0;
};

struct SweepSpec {
    SweepMode mode = SweepMode::Asymptotic;
    std::vector<double> g_grid;
    std::vector<double> tau_grid; // units of the swap time pi / (2g)
    std::vector<WindowSpec> windows{{WindowKind::Rectangular, 1.0}, {WindowKind::Hamming, 1.0}, {WindowKind::Hamming, 2.0}};
    SimParams base;

    void validate() const;
};

// n points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> default_g_grid();   // 0.02, 0.04, ..., 1.00
std::vector<double> default_tau_grid(); // 0.05, 0.10, ..., 4.00

using Cell = std::variant<double, std::string>;

struct SweepRow {
    std::vector<Cell> cells;
    int n_max = 0;     // converged cutoff used for the row
    std::string error; // empty unless the point failed
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

inline constexpr const char* kErrorCell = "error";
inline constexpr const char* kDegenerateCell = "degenerate";

SweepTable sweep_single_stroke(const SweepSpec& spec, int workers);
SweepTable sweep_asymptotic(const SweepSpec& spec, int workers);
SweepTable sweep_windows(const SweepSpec& spec, int workers);

// Dispatch on spec.mode. workers <= 1 runs the serial reference loop.
SweepTable run_sweep(const SweepSpec& spec, int workers);
SweepTable run_sweep_serial(const SweepSpec& spec);

} // namespace dce
