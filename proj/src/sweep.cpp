#include "dce/sweep.hpp"

#include <cmath>
#include <map>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dce/channel.hpp"
#include "dce/errors.hpp"
#include "dce/evolve.hpp"
#include "dce/format.hpp"
#include "dce/otto.hpp"

namespace dce {

std::string to_string(SweepMode m) {
    switch (m) {
    case SweepMode::SingleStroke: return "single";
    case SweepMode::Asymptotic: return "asymptotic";
    case SweepMode::Windows: return "windows";
    }
    return "unknown";
}

SweepMode parse_sweep_mode(const std::string& s) {
    if (s == "single" || s == "single-stroke") return SweepMode::SingleStroke;
    if (s == "asymptotic") return SweepMode::Asymptotic;
    if (s == "windows") return SweepMode::Windows;
    throw SimError(ErrorKind::InvalidParameter, "unknown sweep mode '" + s + "'");
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw SimError(ErrorKind::InvalidParameter, "grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

std::vector<double> default_g_grid() { return linspace(0.02, 1.0, 50); }

std::vector<double> default_tau_grid() { return linspace(0.05, 4.0, 80); }

void SweepSpec::validate() const {
    auto fail = [](const std::string& msg) { throw SimError(ErrorKind::InvalidParameter, msg); };
    base.validate();
    auto increasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) return false;
        return true;
    };
    if (g_grid.empty()) fail("g grid is empty");
    if (!increasing(g_grid)) fail("g grid must be strictly increasing");
    for (double g : g_grid)
        if (!(g > 0.0)) fail("g grid values must be > 0");
    if (mode == SweepMode::Windows) {
        if (windows.empty()) fail("window list is empty");
        for (const auto& w : windows)
            if (!(w.alpha > 0.0)) fail("window alpha must be > 0");
    } else {
        if (tau_grid.empty()) fail("tau grid is empty");
        if (!increasing(tau_grid)) fail("tau grid must be strictly increasing");
        if (!(tau_grid.front() >= 0.0)) fail("tau grid values must be >= 0");
    }
}

namespace {

// Constant-Hamiltonian strokes at fixed g share eigenpairs across tau and
// across repeated cutoffs.
class RectLine {
public:
    explicit RectLine(const SimParams& p) : p_(p) {}

    const HermitianEigensystem& eig(int n_max) {
        auto it = cache_.find(n_max);
        if (it == cache_.end()) {
            it = cache_.emplace(n_max, std::make_unique<HermitianEigensystem>(h_total(p_.with_n_max(n_max), 0.0))).first;
        }
        return *it->second;
    }

    ComplexVector probe(const SimParams& q) {
        ComplexVector psi = ComplexVector::Zero(joint_dim(q.n_max));
        psi(joint_index(kGround, 0, q.n_max)) = 1.0;
        return eig(q.n_max).evolve(psi, q.tau);
    }

    Propagator propagator(const SimParams& q) { return Propagator{eig(q.n_max).propagator(q.tau), q, 1, q.n_max}; }

private:
    SimParams p_;
    std::map<int, std::unique_ptr<HermitianEigensystem>> cache_;
};

struct PointResult {
    int n_max = 0;
    std::string error;
};

// Runs `body` and converts library failures into an in-row error marker.
template <typename Body>
PointResult guarded(Body&& body) {
    PointResult res;
    try {
        res.n_max = body();
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

SimParams point_params(const SweepSpec& spec, double g, double tau_ratio) {
    SimParams p = spec.base;
    p.g = g;
    p.tau = tau_ratio * swap_time(g);
    return p;
}

SweepRow error_row(std::vector<Cell> cells, std::size_t width, const PointResult& res) {
    while (cells.size() < width) cells.emplace_back(std::string(kErrorCell));
    return SweepRow{std::move(cells), res.n_max, res.error};
}

std::vector<SweepRow> single_stroke_line(const SweepSpec& spec, double g) {
    std::vector<SweepRow> rows;
    RectLine line(point_params(spec, g, 0.0));
    for (double ratio : spec.tau_grid) {
        const SimParams p = point_params(spec, g, ratio);
        double z = 0.0;
        const PointResult res = guarded([&] {
            if (p.window == WindowKind::Rectangular) {
                auto probe = [&](const SimParams& q) { return line.probe(q); };
                const int n = ensure_truncation(p, probe);
                z = probe_z(line.probe(p.with_n_max(n)), n);
                return n;
            }
            const int n = ensure_truncation(p);
            z = probe_z(probe_stroke(p.with_n_max(n)), n);
            return n;
        });
        if (!res.error.empty()) {
            rows.push_back(error_row({g, ratio}, 3, res));
        } else {
            rows.push_back(SweepRow{{g, ratio, z}, res.n_max, {}});
        }
    }
    return rows;
}

struct MapPoint {
    AffineMap map;
    FixedPointReport report;
};

MapPoint asymptotic_point(const SimParams& p, RectLine* line, int& n_out) {
    Propagator u;
    if (line && p.window == WindowKind::Rectangular) {
        auto probe = [&](const SimParams& q) { return line->probe(q); };
        n_out = ensure_truncation(p, probe);
        u = line->propagator(p.with_n_max(n_out));
    } else {
        n_out = ensure_truncation(p);
        u = propagate_stroke(p.with_n_max(n_out));
    }
    MapPoint mp;
    mp.map = affine_tomography(u);
    mp.report = fixed_point(mp.map);
    return mp;
}

Cell z_inf_cell(const FixedPointReport& rep) {
    if (rep.degenerate || !rep.z_inf) return std::string(kDegenerateCell);
    return *rep.z_inf;
}

std::vector<SweepRow> asymptotic_line(const SweepSpec& spec, double g) {
    std::vector<SweepRow> rows;
    RectLine line(point_params(spec, g, 0.0));
    for (double ratio : spec.tau_grid) {
        const SimParams p = point_params(spec, g, ratio);
        MapPoint mp;
        const PointResult res = guarded([&] {
            int n = 0;
            mp = asymptotic_point(p, &line, n);
            return n;
        });
        if (!res.error.empty()) {
            rows.push_back(error_row({g, ratio}, 6, res));
        } else {
            rows.push_back(SweepRow{{g, ratio, mp.report.m_zz, mp.report.a_z, z_inf_cell(mp.report), mp.map.residual},
                                    res.n_max,
                                    {}});
        }
    }
    return rows;
}

std::vector<SweepRow> window_point(const SweepSpec& spec, double g, const WindowSpec& w) {
    SimParams p = point_params(spec, g, 1.0);
    p.window = w.kind;
    p.alpha = w.alpha;
    MapPoint mp;
    const PointResult res = guarded([&] {
        int n = 0;
        mp = asymptotic_point(p, nullptr, n);
        return n;
    });
    const std::vector<Cell> key{g, to_string(w.kind), w.alpha};
    if (!res.error.empty()) return {error_row(key, 4, res)};
    std::vector<Cell> cells = key;
    cells.push_back(z_inf_cell(mp.report));
    return {SweepRow{std::move(cells), res.n_max, {}}};
}

std::vector<std::string> columns_for(SweepMode mode) {
    switch (mode) {
    case SweepMode::SingleStroke: return {"g", "tau_over_taus", "z"};
    case SweepMode::Asymptotic: return {"g", "tau_over_taus", "m_zz", "a_z", "z_inf", "residual"};
    case SweepMode::Windows: return {"g", "window", "alpha", "z_inf"};
    }
    return {};
}

std::size_t task_count(const SweepSpec& spec) {
    if (spec.mode == SweepMode::Windows) return spec.g_grid.size() * spec.windows.size();
    return spec.g_grid.size();
}

std::vector<SweepRow> evaluate_task(const SweepSpec& spec, std::size_t task) {
    switch (spec.mode) {
    case SweepMode::SingleStroke: return single_stroke_line(spec, spec.g_grid[task]);
    case SweepMode::Asymptotic: return asymptotic_line(spec, spec.g_grid[task]);
    case SweepMode::Windows: {
        const std::size_t nw = spec.windows.size();
        return window_point(spec, spec.g_grid[task / nw], spec.windows[task % nw]);
    }
    }
    return {};
}

SweepTable assemble(const SweepSpec& spec, std::vector<std::vector<SweepRow>> slots) {
    SweepTable table;
    table.columns = columns_for(spec.mode);
    for (auto& slot : slots) {
        for (auto& row : slot) table.rows.push_back(std::move(row));
    }

    const SimParams& b = spec.base;
    auto& md = table.metadata;
    md.emplace_back("mode", to_string(spec.mode));
    md.emplace_back("g_grid", format_list(spec.g_grid));
    if (spec.mode == SweepMode::Windows) {
        std::string ws;
        for (const auto& w : spec.windows) {
            if (!ws.empty()) ws += ',';
            ws += to_string(w.kind) + ":" + format_double(w.alpha);
        }
        md.emplace_back("windows", ws);
        md.emplace_back("tau_over_taus", "1");
    } else {
        md.emplace_back("tau_grid", format_list(spec.tau_grid));
        md.emplace_back("window", to_string(b.window));
        md.emplace_back("alpha", format_double(b.alpha));
    }
    md.emplace_back("omega", format_double(b.omega));
    md.emplace_back("omega_a", format_double(b.omega_a));
    md.emplace_back("rwa", b.rwa ? "true" : "false");
    md.emplace_back("n_max_start", std::to_string(b.n_max));
    md.emplace_back("step_tol", format_double(b.step_tol));
    md.emplace_back("trunc_tol", format_double(b.trunc_tol));
    md.emplace_back("integrator", to_string(b.integrator));
    std::string cutoffs;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (i) cutoffs += ',';
        cutoffs += std::to_string(table.rows[i].n_max);
    }
    md.emplace_back("n_max_per_row", cutoffs);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (!table.rows[i].error.empty()) {
            md.emplace_back("error_row_" + std::to_string(i), table.rows[i].error);
        }
    }
    return table;
}

void check_mode(const SweepSpec& spec, SweepMode expected) {
    if (spec.mode != expected) {
        throw SimError(ErrorKind::InvalidParameter, "sweep spec mode is " + to_string(spec.mode) + ", expected " +
                                                        to_string(expected));
    }
}

} // namespace

SweepTable run_sweep_serial(const SweepSpec& spec) {
    spec.validate();
    const std::size_t tasks = task_count(spec);
    std::vector<std::vector<SweepRow>> slots(tasks);
    for (std::size_t t = 0; t < tasks; ++t) slots[t] = evaluate_task(spec, t);
    return assemble(spec, std::move(slots));
}

SweepTable run_sweep(const SweepSpec& spec, int workers) {
    if (workers <= 1) return run_sweep_serial(spec);
    spec.validate();
    const std::size_t tasks = task_count(spec);
    std::vector<std::vector<SweepRow>> slots(tasks);
    const long long n = static_cast<long long>(tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long t = 0; t < n; ++t) {
        slots[static_cast<std::size_t>(t)] = evaluate_task(spec, static_cast<std::size_t>(t));
    }
    return assemble(spec, std::move(slots));
}

SweepTable sweep_single_stroke(const SweepSpec& spec, int workers) {
    check_mode(spec, SweepMode::SingleStroke);
    return run_sweep(spec, workers);
}

SweepTable sweep_asymptotic(const SweepSpec& spec, int workers) {
    check_mode(spec, SweepMode::Asymptotic);
    return run_sweep(spec, workers);
}

SweepTable sweep_windows(const SweepSpec& spec, int workers) {
    check_mode(spec, SweepMode::Windows);
    return run_sweep(spec, workers);
}

} // namespace dce
