#include "dce/cli.hpp"

#include <algorithm>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "dce/channel.hpp"
#include "dce/errors.hpp"
#include "dce/evolve.hpp"
#include "dce/format.hpp"
#include "dce/otto.hpp"
#include "dce/report.hpp"

namespace dce::cli {

namespace {

struct CommonOptions {
    double g = 0.5;
    double tau = 0.0;
    double tau_swap = 1.0;
    std::string window = "rect";
    std::string integrator = "cf4";
    CLI::Option* tau_opt = nullptr;
};

void add_physics_options(CLI::App* sub, CommonOptions& c, SimParams& p, bool with_tau) {
    sub->add_option("--g", c.g, "coupling strength (units of omega)");
    if (with_tau) {
        c.tau_opt = sub->add_option("--tau", c.tau, "stroke duration (units of 1/omega)");
        auto* swap = sub->add_option("--tau-swap-units", c.tau_swap, "stroke duration in units of pi/(2g)");
        c.tau_opt->excludes(swap);
    }
    sub->add_option("--omega", p.omega, "field frequency");
    sub->add_option("--omega-a", p.omega_a, "qubit frequency");
    sub->add_option("--window", c.window, "switching window")->check(CLI::IsMember({"rect", "hamming"}));
    sub->add_option("--alpha", p.alpha, "Hamming stretch factor");
    sub->add_flag("--rwa", p.rwa, "drop counter-rotating terms");
    sub->add_option("--nmax", p.n_max, "initial Fock cutoff");
    sub->add_option("--step-tol", p.step_tol, "step-doubling tolerance");
    sub->add_option("--trunc-tol", p.trunc_tol, "Fock-truncation tolerance");
    sub->add_option("--integrator", c.integrator, "windowed integrator")->check(CLI::IsMember({"cf4", "midpoint"}));
}

void finish_physics(const CommonOptions& c, SimParams& p, bool with_tau) {
    p.g = c.g;
    p.window = parse_window(c.window);
    p.integrator = parse_integrator(c.integrator);
    if (with_tau) {
        if (c.tau_opt && c.tau_opt->count() > 0) {
            p.tau = c.tau;
        } else {
            if (!(c.tau_swap >= 0.0)) throw SimError(ErrorKind::InvalidParameter, "--tau-swap-units must be >= 0");
            p.tau = c.tau_swap * swap_time(p.g);
        }
    }
    p.validate();
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::pair<std::string, std::string>> command_metadata(const RunConfig& cfg, int n_max) {
    std::vector<std::pair<std::string, std::string>> md;
    switch (cfg.command) {
    case Command::Stroke:
        md.emplace_back("command", "stroke");
        md.emplace_back("init", cfg.init);
        md.emplace_back("samples", std::to_string(cfg.samples));
        break;
    case Command::Iterate:
        md.emplace_back("command", "iterate");
        md.emplace_back("init", cfg.init);
        md.emplace_back("cycles", std::to_string(cfg.cycles));
        md.emplace_back("method", cfg.method);
        break;
    default: break;
    }
    md.emplace_back("n_max_converged", std::to_string(n_max));
    return md;
}

void prepend(std::vector<std::pair<std::string, std::string>>& target,
             const std::vector<std::pair<std::string, std::string>>& head) {
    target.insert(target.begin(), head.begin(), head.end());
}

} // namespace

BlochVector parse_initial_state(const std::string& s) {
    if (s == "ground") return {0.0, 0.0, 1.0};
    if (s == "excited") return {0.0, 0.0, -1.0};
    if (s == "mixed") return {0.0, 0.0, 0.0};
    if (s == "plus") return {1.0, 0.0, 0.0};
    const std::string prefix = "thermal:";
    if (s.rfind(prefix, 0) == 0) {
        double p = 0.0;
        try {
            std::size_t used = 0;
            p = std::stod(s.substr(prefix.size()), &used);
            if (used != s.size() - prefix.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw SimError(ErrorKind::InvalidParameter, "cannot parse thermal population in '" + s + "'");
        }
        if (!(p > 0.0 && p < 1.0)) throw SimError(ErrorKind::InvalidParameter, "thermal population must be in (0, 1)");
        return {0.0, 0.0, 2.0 * p - 1.0};
    }
    throw SimError(ErrorKind::InvalidParameter, "unknown initial state '" + s + "'");
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Qubit cooling by repeated Rabi strokes with vacuum reset", "dce-otto"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.workers = default_workers();

    CommonOptions stroke_c, tomo_c, iter_c, sweep_c;
    SimParams stroke_p, tomo_p, iter_p, sweep_p;

    auto* stroke = app.add_subcommand("stroke", "observables along one stroke");
    add_physics_options(stroke, stroke_c, stroke_p, true);
    stroke->add_option("--init", cfg.init, "initial qubit state");
    stroke->add_option("--samples", cfg.samples, "sample count")->check(CLI::Range(2, 1 << 24));
    stroke->add_option("--out", cfg.out, "output CSV path ('-' for stdout)");

    auto* tomo = app.add_subcommand("tomo", "affine Bloch map of one cycle");
    add_physics_options(tomo, tomo_c, tomo_p, true);
    tomo->add_option("--out", cfg.out, "output JSON path ('-' for stdout)");

    auto* iter = app.add_subcommand("iterate", "Bloch vector over repeated cycles");
    add_physics_options(iter, iter_c, iter_p, true);
    iter->add_option("--init", cfg.init, "initial qubit state");
    iter->add_option("--cycles", cfg.cycles, "cycle count")->check(CLI::NonNegativeNumber);
    iter->add_option("--method", cfg.method, "affine map or direct channel")->check(CLI::IsMember({"affine", "channel"}));
    iter->add_option("--out", cfg.out, "output CSV path ('-' for stdout)");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep");
    add_physics_options(sweep, sweep_c, sweep_p, false);
    std::string mode = "asymptotic";
    double g_min = 0.02, g_max = 1.0, tau_min = 0.05, tau_max = 4.0;
    int g_steps = 50, tau_steps = 80;
    sweep->add_option("--mode", mode, "single | asymptotic | windows")
        ->check(CLI::IsMember({"single", "asymptotic", "windows"}));
    sweep->add_option("--g-min", g_min);
    sweep->add_option("--g-max", g_max);
    sweep->add_option("--g-steps", g_steps)->check(CLI::PositiveNumber);
    sweep->add_option("--tau-min", tau_min, "in units of the swap time");
    sweep->add_option("--tau-max", tau_max, "in units of the swap time");
    sweep->add_option("--tau-steps", tau_steps)->check(CLI::PositiveNumber);
    sweep->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", cfg.out, "output CSV path ('-' for stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e); // prints help for the selected subcommand
        throw;
    }

    if (stroke->parsed()) {
        cfg.command = Command::Stroke;
        finish_physics(stroke_c, stroke_p, true);
        cfg.params = stroke_p;
        parse_initial_state(cfg.init);
    } else if (tomo->parsed()) {
        cfg.command = Command::Tomo;
        finish_physics(tomo_c, tomo_p, true);
        cfg.params = tomo_p;
    } else if (iter->parsed()) {
        cfg.command = Command::Iterate;
        finish_physics(iter_c, iter_p, true);
        cfg.params = iter_p;
        parse_initial_state(cfg.init);
    } else {
        cfg.command = Command::Sweep;
        finish_physics(sweep_c, sweep_p, false);
        cfg.params = sweep_p;
        cfg.sweep.mode = parse_sweep_mode(mode);
        cfg.sweep.base = sweep_p;
        cfg.sweep.g_grid = linspace(g_min, g_max, g_steps);
        cfg.sweep.tau_grid = linspace(tau_min, tau_max, tau_steps);
        cfg.sweep.validate();
    }
    return cfg;
}

void run(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::Stroke: {
        const int n = ensure_truncation(cfg.params);
        const SimParams p = cfg.params.with_n_max(n);
        const JointState rho0 = JointState::product(density_of(parse_initial_state(cfg.init)), n);
        CsvDocument doc = csv_of(stroke_trajectory(p, rho0, cfg.samples), p);
        prepend(doc.metadata, command_metadata(cfg, n));
        write_csv(doc, cfg.out);
        return;
    }
    case Command::Tomo: {
        const Propagator u = build_stroke(cfg.params);
        const AffineMap map = affine_tomography(u);
        const FixedPointReport fp = fixed_point(map);
        write_text_atomic(cfg.out, tomography_report(u, map, fp).dump(2) + "\n");
        return;
    }
    case Command::Iterate: {
        const Propagator u = build_stroke(cfg.params);
        const BlochVector r0 = parse_initial_state(cfg.init);
        CycleTrajectory traj = cfg.method == "channel" ? iterate_channel(r0, QubitChannel(u), cfg.cycles)
                                                       : iterate(r0, affine_tomography(u), cfg.cycles);
        traj.params = u.params;
        CsvDocument doc = csv_of(traj);
        prepend(doc.metadata, command_metadata(cfg, u.trunc_used));
        write_csv(doc, cfg.out);
        return;
    }
    case Command::Sweep: {
        const SweepTable table = run_sweep(cfg.sweep, cfg.workers);
        CsvDocument doc = csv_of(table);
        prepend(doc.metadata, {{"command", "sweep"}});
        write_csv(doc, cfg.out);
        std::size_t failures = 0;
        for (const auto& row : table.rows) failures += row.error.empty() ? 0 : 1;
        if (failures > 0) {
            throw SimError(ErrorKind::ConvergenceFailure,
                           std::to_string(failures) + " sweep point(s) failed; see error_row_* metadata");
        }
        return;
    }
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const CLI::CallForHelp&) {
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidArguments;
    }

    try {
        run(cfg);
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::InvalidParameter:
        case ErrorKind::InvalidState:
        case ErrorKind::InvalidOperator: return kInvalidArguments;
        default: return kRuntimeFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeFailure;
    }
    return kOk;
}

} // namespace dce::cli
