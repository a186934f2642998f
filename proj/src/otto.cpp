#include "dce/otto.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "dce/errors.hpp"

namespace dce {

CycleTrajectory iterate(const BlochVector& r0, const AffineMap& map, int n) {
    if (n < 0) throw SimError(ErrorKind::InvalidParameter, "cycle count must be >= 0");
    if (r0.norm() > 1.0 + 1e-10) throw SimError(ErrorKind::InvalidState, "initial Bloch vector outside the ball");
    CycleTrajectory traj;
    traj.entries.reserve(static_cast<std::size_t>(n) + 1);
    traj.entries.push_back({0, r0});
    BlochVector r = r0;
    for (int k = 1; k <= n; ++k) {
        r = map.apply(r);
        traj.entries.push_back({k, r});
    }
    return traj;
}

CycleTrajectory iterate_channel(const BlochVector& r0, const QubitChannel& channel, int n) {
    if (n < 0) throw SimError(ErrorKind::InvalidParameter, "cycle count must be >= 0");
    CycleTrajectory traj;
    traj.entries.reserve(static_cast<std::size_t>(n) + 1);
    ComplexMatrix rho = density_of(r0);
    traj.entries.push_back({0, r0});
    for (int k = 1; k <= n; ++k) {
        rho = channel.apply(rho);
        traj.entries.push_back({k, bloch_of(rho)});
    }
    return traj;
}

CycleTrajectory iterate_until_converged(const BlochVector& r0, const AffineMap& map, int max_cycles, double tol) {
    CycleTrajectory traj = iterate(r0, map, 0);
    BlochVector r = r0;
    for (int k = 1; k <= max_cycles; ++k) {
        const BlochVector next = map.apply(r);
        traj.entries.push_back({k, next});
        const bool settled = std::abs(next.z - r.z) < tol && std::hypot(next.x, next.y) < tol;
        r = next;
        if (settled) break;
    }
    return traj;
}

FixedPointReport fixed_point(const AffineMap& map) {
    const double residual = structure_residual(map);
    if (!(residual < kStructureTol)) {
        throw SimError(ErrorKind::StructureViolation, "affine map is not block diagonal (residual " +
                                                          std::to_string(residual) + ")");
    }
    FixedPointReport rep;
    rep.m_zz = map.m_zz();
    rep.a_z = map.a_z();
    rep.degenerate = std::abs(1.0 - rep.m_zz) < kDegeneracyTol;
    if (!rep.degenerate) rep.z_inf = rep.a_z / (1.0 - rep.m_zz);

    Eigen::EigenSolver<Eigen::Matrix2d> es(map.xy_block());
    rep.xy_decay_modulus = es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::Matrix2cd basis = es.eigenvectors();
    basis.col(0).normalize();
    basis.col(1).normalize();
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(basis);
    const double smin = svd.singularValues()(1);
    rep.xy_transient_factor =
        smin > 0.0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
    return rep;
}

Temperature temperature(double z, double omega) {
    if (!(std::abs(z) <= 1.0 + 1e-12)) {
        throw SimError(ErrorKind::InvalidState, "Bloch z outside [-1, 1]");
    }
    if (z >= 1.0) return {0.0, false};
    if (z == 0.0) return {std::numeric_limits<double>::infinity(), false};
    if (z <= -1.0) return {-0.0, true};
    // ln(p / (1 - p)) = ln((1 + z) / (1 - z)) = 2 atanh(z)
    return {omega / (2.0 * std::atanh(z)), z < 0.0};
}

double convergence_check(const CycleTrajectory& traj, const FixedPointReport& report) {
    if (report.degenerate || !report.z_inf) {
        throw SimError(ErrorKind::InvalidParameter, "convergence check needs a non-degenerate fixed point");
    }
    if (traj.entries.empty()) return 0.0;
    const double z_inf = *report.z_inf;
    const BlochVector& r0 = traj.entries.front().r;
    const double xy0 = std::hypot(r0.x, r0.y);
    double worst = 0.0;
    for (const CycleEntry& e : traj.entries) {
        const double predicted = std::pow(report.m_zz, e.n) * (r0.z - z_inf);
        worst = std::max(worst, std::abs((e.r.z - z_inf) - predicted));
        const double envelope =
            report.xy_transient_factor * std::pow(report.xy_decay_modulus, e.n) * xy0 * (1.0 + 1e-9);
        worst = std::max(worst, std::hypot(e.r.x, e.r.y) - envelope);
    }
    return worst;
}

int cycles_to_reach(double m_zz, double z0_offset, double eps) {
    if (std::abs(z0_offset) < eps) return 0;
    if (std::abs(m_zz) >= 1.0) return std::numeric_limits<int>::max();
    return static_cast<int>(std::floor(std::log(eps / std::abs(z0_offset)) / std::log(std::abs(m_zz)))) + 1;
}

} // namespace dce
