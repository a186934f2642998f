#include "dce/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <unistd.h>

#include "dce/errors.hpp"
#include "dce/format.hpp"

namespace dce {

namespace {

std::string render_cell(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return format_double(*v);
    return std::get<std::string>(c);
}

} // namespace

std::string CsvDocument::render() const {
    std::string out;
    for (const auto& [key, value] : metadata) {
        out += "# " + key + "=" + value + "\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += render_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

Metadata params_metadata(const SimParams& p) {
    return {
        {"g", format_double(p.g)},
        {"tau", format_double(p.tau)},
        {"omega", format_double(p.omega)},
        {"omega_a", format_double(p.omega_a)},
        {"window", to_string(p.window)},
        {"alpha", format_double(p.alpha)},
        {"rwa", p.rwa ? "true" : "false"},
        {"n_max", std::to_string(p.n_max)},
        {"step_tol", format_double(p.step_tol)},
        {"trunc_tol", format_double(p.trunc_tol)},
        {"integrator", to_string(p.integrator)},
    };
}

CsvDocument csv_of(const SweepTable& table) {
    CsvDocument doc;
    doc.metadata = table.metadata;
    doc.columns = table.columns;
    for (const auto& row : table.rows) doc.rows.push_back(row.cells);
    return doc;
}

CsvDocument csv_of(const CycleTrajectory& traj) {
    CsvDocument doc;
    doc.metadata = params_metadata(traj.params);
    doc.columns = {"n", "x", "y", "z", "temperature"};
    for (const auto& e : traj.entries) {
        const Temperature t = temperature(std::clamp(e.r.z, -1.0, 1.0), traj.params.omega);
        doc.rows.push_back({std::to_string(e.n), e.r.x, e.r.y, e.r.z, t.value});
    }
    return doc;
}

CsvDocument csv_of(const std::vector<TrajectoryPoint>& traj, const SimParams& p) {
    CsvDocument doc;
    doc.metadata = params_metadata(p);
    doc.columns = {"t", "x", "y", "z", "mean_n"};
    for (const auto& pt : traj) doc.rows.push_back({pt.t, pt.r.x, pt.r.y, pt.r.z, pt.mean_n});
    return doc;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw SimError(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) throw SimError(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw SimError(ErrorKind::Io, "cannot rename into " + target.string());
    }
}

void write_csv(const CsvDocument& doc, const std::string& path) { write_text_atomic(path, doc.render()); }

void write_csv(const SweepTable& table, const std::string& path) { write_csv(csv_of(table), path); }

void write_csv(const CycleTrajectory& traj, const std::string& path) { write_csv(csv_of(traj), path); }

nlohmann::json tomography_report(const Propagator& u, const AffineMap& map, const FixedPointReport& fp) {
    nlohmann::json j;
    std::vector<double> m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.push_back(map.m(r, c));
    j["m"] = m;
    j["a"] = {map.a(0), map.a(1), map.a(2)};
    j["residual"] = map.residual;
    j["z_inf"] = fp.z_inf ? nlohmann::json(*fp.z_inf) : nlohmann::json(nullptr);
    j["m_zz"] = fp.m_zz;
    j["a_z"] = fp.a_z;
    j["degenerate"] = fp.degenerate;
    j["xy_decay_modulus"] = fp.xy_decay_modulus;
    j["choi_min_eigenvalue"] = choi_min_eigenvalue(map);
    j["n_max"] = u.trunc_used;
    j["steps_used"] = u.steps_used;
    const SimParams& p = u.params;
    j["params"] = {
        {"g", p.g},
        {"tau", p.tau},
        {"omega", p.omega},
        {"omega_a", p.omega_a},
        {"window", to_string(p.window)},
        {"alpha", p.alpha},
        {"rwa", p.rwa},
        {"n_max", p.n_max},
        {"step_tol", p.step_tol},
        {"trunc_tol", p.trunc_tol},
        {"integrator", to_string(p.integrator)},
    };
    return j;
}

} // namespace dce
