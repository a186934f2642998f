#pragma once

#include <functional>
#include <vector>

#include "dce/model.hpp"
#include "dce/operators.hpp"

namespace dce {

// Stroke propagator on the truncated joint space.
struct Propagator {
    ComplexMatrix u;
    SimParams params;
    int steps_used = 1;
    int trunc_used = 0;

    int n_max() const { return static_cast<int>(u.rows()) / 2 - 1; }
};

// Step ceiling for the doubling loop of windowed propagation.
inline constexpr int kMaxSteps = 1 << 20;
// Fock cutoff ceiling for ensure_truncation.
inline constexpr int kMaxCutoff = 4096;
// Population allowed in the two highest Fock levels after the probe stroke.
inline constexpr double kTailPopulationTol = 1e-10;

// e^{-iH duration}; exact up to roundoff, steps_used = 1.
Propagator propagate_constant(const ComplexMatrix& h, double duration);

// Time-ordered propagator over [0, support_length]. Rectangular windows are
// routed to propagate_constant. Hamming windows use p.integrator with step
// doubling until ||U_2N - U_N||_max < p.step_tol; U_2N is returned.
Propagator propagate_windowed(const SimParams& p);

// Same product formula at a fixed step count (no acceptance test).
Propagator propagate_windowed_fixed(const SimParams& p, int steps);

// Stroke propagator at p.n_max, whatever the window.
Propagator propagate_stroke(const SimParams& p);

// Final joint state vector after one stroke from |g>|0> at p.n_max.
using StrokeProbe = std::function<ComplexVector(const SimParams&)>;
ComplexVector probe_stroke(const SimParams& p);

// Qubit z and top-two-level population of a joint pure state.
double probe_z(const ComplexVector& psi, int n_max);
double tail_population(const ComplexVector& psi, int n_max);

// Smallest cutoff n = p.n_max * 2^k whose probe stroke has tail population
// below kTailPopulationTol and whose z differs from the 2n run by less than
// p.trunc_tol.
int ensure_truncation(const SimParams& p);
int ensure_truncation(const SimParams& p, const StrokeProbe& probe);

// ensure_truncation followed by propagate_stroke at the converged cutoff.
Propagator build_stroke(const SimParams& p);

struct TrajectoryPoint {
    double t = 0.0;
    BlochVector r;
    double mean_n = 0.0;
};

// Observables at `samples` equally spaced times in [0, support_length].
// rho0 fixes the cutoff; p.n_max is ignored.
std::vector<TrajectoryPoint> stroke_trajectory(const SimParams& p, const JointState& rho0, int samples);

} // namespace dce
