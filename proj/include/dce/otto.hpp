#pragma once

#include <optional>
#include <vector>

#include "dce/channel.hpp"
#include "dce/model.hpp"

namespace dce {

struct CycleEntry {
    int n = 0;
    BlochVector r;
};

struct CycleTrajectory {
    std::vector<CycleEntry> entries; // entries[0] is the initial state
    SimParams params;
};

struct FixedPointReport {
    std::optional<double> z_inf; // unset when degenerate
    double m_zz = 0.0;
    double a_z = 0.0;
    double xy_decay_modulus = 0.0; // spectral radius of the xy block
    // Condition number of the xy block's eigenvector basis. |(x_n, y_n)| is
    // bounded by this factor times xy_decay_modulus^n |(x_0, y_0)|; it is 1
    // only when the block is normal.
    double xy_transient_factor = 1.0;
    bool degenerate = false;
};

inline constexpr double kDegeneracyTol = 1e-12;
inline constexpr double kStructureTol = 1e-6;

// r_k = M r_{k-1} + a for k = 1..n.
CycleTrajectory iterate(const BlochVector& r0, const AffineMap& map, int n);
// Same recursion through the Kraus form of the cycle.
CycleTrajectory iterate_channel(const BlochVector& r0, const QubitChannel& channel, int n);

// Affine iteration until |z_n - z_{n-1}| < tol and |(x_n, y_n)| < tol,
// capped at max_cycles.
CycleTrajectory iterate_until_converged(const BlochVector& r0, const AffineMap& map, int max_cycles = 1'000'000,
                                        double tol = 1e-14);

FixedPointReport fixed_point(const AffineMap& map);

struct Temperature {
    double value = 0.0; // +inf at z = 0
    bool inverted = false; // z < 0
};

// T = omega / ln(p / (1 - p)) with ground population p = (1 + z) / 2.
Temperature temperature(double z, double omega);

// Largest violation of z_n - z_inf = m_zz^n (z_0 - z_inf) and of the xy
// envelope |(x_n, y_n)| <= factor * rho^n |(x_0, y_0)| (1 + 1e-9).
double convergence_check(const CycleTrajectory& traj, const FixedPointReport& report);

// Smallest n with |m_zz|^n |z_0 - z_inf| < eps.
int cycles_to_reach(double m_zz, double z0_offset, double eps);

} // namespace dce
