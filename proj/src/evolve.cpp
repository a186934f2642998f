#include "dce/evolve.hpp"

#include <array>
#include <cmath>
#include <string>

#include "dce/errors.hpp"

namespace dce {

namespace {

using Block = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SectorBlocks = std::array<Block, 2>;

// Parity sector s holds |q, n> with q = (n + s) mod 2, ordered by n. Both the
// Rabi and the Jaynes-Cummings couplings are tridiagonal in this order.
int sector_index(int s, int n, int n_max) { return joint_index((n + s) % 2, n, n_max); }

struct SectorCoupling {
    Eigen::VectorXd energy; // H0 diagonal
    Eigen::VectorXd diag;   // coupling diagonal
    ComplexVector upper;    // coupling (n, n+1) at t = 0
    Eigen::VectorXd freq;   // E_n - E_{n+1}
};

constexpr double kTaylorTarget = 1e-17;
constexpr double kTaylorMaxNorm = 0.5;

// One step's tridiagonal generator in the interaction picture.
struct Generator {
    Eigen::VectorXd diag;
    ComplexVector upper;
};

void tridiagonal_times(const Generator& gen, const Block& x, Block& out) {
    const Eigen::Index d = x.rows();
    for (Eigen::Index n = 0; n < d; ++n) {
        out.row(n) = gen.diag(n) * x.row(n);
        if (n + 1 < d) out.row(n) += gen.upper(n) * x.row(n + 1);
        if (n > 0) out.row(n) += std::conj(gen.upper(n - 1)) * x.row(n - 1);
    }
}

double gershgorin_bound(const Generator& gen) {
    const Eigen::Index d = gen.diag.size();
    double bound = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        double row = std::abs(gen.diag(n));
        if (n + 1 < d) row += std::abs(gen.upper(n));
        if (n > 0) row += std::abs(gen.upper(n - 1));
        bound = std::max(bound, row);
    }
    return bound;
}

// x <- exp(-i h G) x by truncated Taylor series on substeps of norm <= 0.5.
void apply_exponential(const Generator& gen, double h, Block& x) {
    const double norm = gershgorin_bound(gen) * h;
    if (norm == 0.0) return;
    const int substeps = std::max(1, static_cast<int>(std::ceil(norm / kTaylorMaxNorm)));
    const double dt = h / substeps;
    const double eta = norm / substeps;

    int order = 1;
    double bound = eta;
    while (bound >= kTaylorTarget && order < 40) {
        ++order;
        bound *= eta / order;
    }

    Block term(x.rows(), x.cols());
    Block next(x.rows(), x.cols());
    for (int s = 0; s < substeps; ++s) {
        term = x;
        for (int k = 1; k <= order; ++k) {
            tridiagonal_times(gen, term, next);
            term = next * Complex(0.0, -dt / k);
            x += term;
        }
    }
}

class WindowedStroke {
public:
    explicit WindowedStroke(const SimParams& p) : p_(p) {
        p_.validate();
        const int n_max = p_.n_max;
        const int d = fock_dim(n_max);
        const ComplexMatrix h_free = h0(p_);
        const ComplexMatrix coupling = h_int(p_);

        // Reject couplings outside the parity-sector tridiagonal pattern.
        ComplexMatrix covered = ComplexMatrix::Zero(coupling.rows(), coupling.cols());
        for (int s = 0; s < 2; ++s) {
            SectorCoupling& sec = sectors_[s];
            sec.energy.resize(d);
            sec.diag.resize(d);
            sec.upper = ComplexVector::Zero(std::max(d - 1, 0));
            sec.freq = Eigen::VectorXd::Zero(std::max(d - 1, 0));
            for (int n = 0; n < d; ++n) {
                const int k = sector_index(s, n, n_max);
                sec.energy(n) = h_free(k, k).real();
                sec.diag(n) = coupling(k, k).real();
                covered(k, k) = coupling(k, k);
                if (n + 1 < d) {
                    const int k1 = sector_index(s, n + 1, n_max);
                    sec.upper(n) = coupling(k, k1);
                    covered(k, k1) = coupling(k, k1);
                    covered(k1, k) = coupling(k1, k);
                }
            }
            for (int n = 0; n + 1 < d; ++n) {
                sec.freq(n) = sec.energy(n) - sec.energy(n + 1);
                max_freq_ = std::max(max_freq_, std::abs(sec.freq(n)));
            }
        }
        if (max_abs(coupling - covered) > 0.0 || max_abs(h_free - ComplexMatrix(h_free.diagonal().asDiagonal())) > 0.0) {
            throw SimError(ErrorKind::InvalidOperator, "Hamiltonian breaks the parity-sector structure");
        }
    }

    int initial_steps(double duration) const {
        return std::max(16, static_cast<int>(std::ceil(2.0 * duration * max_freq_)));
    }

    // x <- U_I(t1, t0) x with `steps` uniform steps of p.integrator.
    void advance(SectorBlocks& x, double t0, double t1, int steps) const {
        const double h = (t1 - t0) / steps;
        for (int s = 0; s < 2; ++s) {
            if (x[s].cols() == 0) continue;
            for (int k = 0; k < steps; ++k) {
                const double t = t0 + k * h;
                if (p_.integrator == Integrator::Midpoint) {
                    const double tm = t + 0.5 * h;
                    apply_exponential(generator(s, {tm, 0.0}, {window_value(p_, tm), 0.0}), h, x[s]);
                } else {
                    // Two-exponential commutator-free Magnus, Gauss nodes c1 < c2.
                    const double r = std::sqrt(3.0) / 6.0;
                    const double t1n = t + (0.5 - r) * h;
                    const double t2n = t + (0.5 + r) * h;
                    const double f1 = window_value(p_, t1n);
                    const double f2 = window_value(p_, t2n);
                    const double wa = 0.25 + r;
                    const double wb = 0.25 - r;
                    apply_exponential(generator(s, {t1n, t2n}, {wa * f1, wb * f2}), h, x[s]);
                    apply_exponential(generator(s, {t1n, t2n}, {wb * f1, wa * f2}), h, x[s]);
                }
            }
        }
    }

    // Step doubling on [t0, t1]; returns the accepted step count.
    int advance_converged(SectorBlocks& x, double t0, double t1) const {
        if (t1 <= t0) return 0;
        int steps = initial_steps(t1 - t0);
        SectorBlocks coarse = x;
        advance(coarse, t0, t1, steps);
        while (true) {
            const int fine_steps = 2 * steps;
            if (fine_steps > kMaxSteps) {
                throw SimError(ErrorKind::ConvergenceFailure,
                               "windowed propagation not converged within " + std::to_string(kMaxSteps) + " steps");
            }
            SectorBlocks fine = x;
            advance(fine, t0, t1, fine_steps);
            double diff = 0.0;
            for (int s = 0; s < 2; ++s) {
                if (fine[s].size() > 0) diff = std::max(diff, (fine[s] - coarse[s]).cwiseAbs().maxCoeff());
            }
            if (diff < p_.step_tol) {
                x = std::move(fine);
                return fine_steps;
            }
            coarse = std::move(fine);
            steps = fine_steps;
        }
    }

    static SectorBlocks identity_blocks(int n_max) {
        const int d = fock_dim(n_max);
        return {Block::Identity(d, d), Block::Identity(d, d)};
    }

    static SectorBlocks vacuum_probe_blocks(int n_max) {
        const int d = fock_dim(n_max);
        SectorBlocks x{Block::Zero(d, 1), Block(d, 0)};
        x[0](0, 0) = 1.0; // |g,0> opens the even sector
        return x;
    }

    // Schroedinger-picture U(t1, t0) = e^{-iH0 t1} U_I(t1, t0) e^{iH0 t0}.
    ComplexMatrix to_joint(const SectorBlocks& x, double t1, double t0) const {
        const int n_max = p_.n_max;
        const int d = fock_dim(n_max);
        ComplexMatrix u = ComplexMatrix::Zero(joint_dim(n_max), joint_dim(n_max));
        for (int s = 0; s < 2; ++s) {
            const SectorCoupling& sec = sectors_[s];
            for (int m = 0; m < d; ++m) {
                const Complex left = std::polar(1.0, -sec.energy(m) * t1);
                for (int n = 0; n < d; ++n) {
                    u(sector_index(s, m, n_max), sector_index(s, n, n_max)) =
                        left * x[s](m, n) * std::polar(1.0, sec.energy(n) * t0);
                }
            }
        }
        return u;
    }

    ComplexVector probe_to_joint(const SectorBlocks& x, double t1) const {
        const int n_max = p_.n_max;
        ComplexVector psi = ComplexVector::Zero(joint_dim(n_max));
        for (int n = 0; n < fock_dim(n_max); ++n) {
            psi(sector_index(0, n, n_max)) = std::polar(1.0, -sectors_[0].energy(n) * t1) * x[0](n, 0);
        }
        return psi;
    }

private:
    // sum_j w_j * V_I(t_j) restricted to sector s.
    Generator generator(int s, std::array<double, 2> times, std::array<double, 2> weights) const {
        const SectorCoupling& sec = sectors_[s];
        Generator gen{Eigen::VectorXd::Zero(sec.diag.size()), ComplexVector::Zero(sec.upper.size())};
        for (int j = 0; j < 2; ++j) {
            if (weights[j] == 0.0) continue;
            gen.diag += weights[j] * sec.diag;
            for (Eigen::Index n = 0; n < sec.upper.size(); ++n) {
                gen.upper(n) += weights[j] * sec.upper(n) * std::polar(1.0, sec.freq(n) * times[j]);
            }
        }
        return gen;
    }

    SimParams p_;
    std::array<SectorCoupling, 2> sectors_;
    double max_freq_ = 0.0;
};

double mean_photons(const ComplexMatrix& rho, int n_max) {
    double total = 0.0;
    for (int q = 0; q < 2; ++q) {
        for (int n = 0; n <= n_max; ++n) {
            total += n * rho(joint_index(q, n, n_max), joint_index(q, n, n_max)).real();
        }
    }
    return total;
}

} // namespace

Propagator propagate_constant(const ComplexMatrix& h, double duration) {
    if (!(duration >= 0.0)) {
        throw SimError(ErrorKind::InvalidParameter, "duration must be >= 0");
    }
    Propagator out;
    out.u = expm_hermitian(h, duration);
    out.params.n_max = static_cast<int>(h.rows()) / 2 - 1;
    out.steps_used = 1;
    out.trunc_used = out.params.n_max;
    return out;
}

Propagator propagate_windowed_fixed(const SimParams& p, int steps) {
    if (steps < 1) {
        throw SimError(ErrorKind::InvalidParameter, "steps must be >= 1");
    }
    WindowedStroke stroke(p);
    SectorBlocks x = WindowedStroke::identity_blocks(p.n_max);
    const double duration = p.support_length();
    stroke.advance(x, 0.0, duration, steps);
    return Propagator{stroke.to_joint(x, duration, 0.0), p, steps, p.n_max};
}

Propagator propagate_windowed(const SimParams& p) {
    p.validate();
    if (p.window == WindowKind::Rectangular) {
        Propagator out = propagate_constant(h_total(p, 0.0), p.tau);
        out.params = p;
        return out;
    }
    WindowedStroke stroke(p);
    SectorBlocks x = WindowedStroke::identity_blocks(p.n_max);
    const double duration = p.support_length();
    const int steps = stroke.advance_converged(x, 0.0, duration);
    return Propagator{stroke.to_joint(x, duration, 0.0), p, std::max(steps, 1), p.n_max};
}

Propagator propagate_stroke(const SimParams& p) { return propagate_windowed(p); }

ComplexVector probe_stroke(const SimParams& p) {
    p.validate();
    if (p.window == WindowKind::Rectangular) {
        ComplexVector psi = ComplexVector::Zero(joint_dim(p.n_max));
        psi(joint_index(kGround, 0, p.n_max)) = 1.0;
        return HermitianEigensystem(h_total(p, 0.0)).evolve(psi, p.tau);
    }
    WindowedStroke stroke(p);
    SectorBlocks x = WindowedStroke::vacuum_probe_blocks(p.n_max);
    const double duration = p.support_length();
    stroke.advance_converged(x, 0.0, duration);
    return stroke.probe_to_joint(x, duration);
}

double probe_z(const ComplexVector& psi, int n_max) {
    double z = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        z += std::norm(psi(joint_index(kGround, n, n_max))) - std::norm(psi(joint_index(kExcited, n, n_max)));
    }
    return z;
}

double tail_population(const ComplexVector& psi, int n_max) {
    double pop = 0.0;
    for (int n = std::max(0, n_max - 1); n <= n_max; ++n) {
        pop += std::norm(psi(joint_index(kGround, n, n_max))) + std::norm(psi(joint_index(kExcited, n, n_max)));
    }
    return pop;
}

int ensure_truncation(const SimParams& p) { return ensure_truncation(p, probe_stroke); }

int ensure_truncation(const SimParams& p, const StrokeProbe& probe) {
    p.validate();
    int n = p.n_max;
    ComplexVector psi = probe(p.with_n_max(n));
    while (true) {
        if (2 * n > kMaxCutoff) {
            throw SimError(ErrorKind::TruncationFailure,
                           "Fock cutoff exceeds " + std::to_string(kMaxCutoff) + " without convergence");
        }
        ComplexVector psi2 = probe(p.with_n_max(2 * n));
        const bool tail_ok = tail_population(psi, n) < kTailPopulationTol;
        const bool z_ok = std::abs(probe_z(psi2, 2 * n) - probe_z(psi, n)) < p.trunc_tol;
        if (tail_ok && z_ok) return n;
        n *= 2;
        psi = std::move(psi2);
    }
}

Propagator build_stroke(const SimParams& p) {
    const int n = ensure_truncation(p);
    Propagator out = propagate_stroke(p.with_n_max(n));
    out.trunc_used = n;
    return out;
}

std::vector<TrajectoryPoint> stroke_trajectory(const SimParams& params, const JointState& rho0, int samples) {
    if (samples < 2) {
        throw SimError(ErrorKind::InvalidParameter, "samples must be >= 2");
    }
    const SimParams p = params.with_n_max(rho0.n_max());
    p.validate();
    const double length = p.support_length();
    const int n_max = p.n_max;

    std::vector<TrajectoryPoint> out;
    out.reserve(samples);
    auto record = [&](double t, const ComplexMatrix& u) {
        const ComplexMatrix rho = u * rho0.rho() * u.adjoint();
        out.push_back({t, bloch_of(partial_trace_osc(rho, n_max)), mean_photons(rho, n_max)});
    };

    if (p.window == WindowKind::Rectangular) {
        const HermitianEigensystem eig(h_total(p, 0.0));
        for (int j = 0; j < samples; ++j) {
            const double t = length * j / (samples - 1);
            record(t, eig.propagator(t));
        }
        return out;
    }

    WindowedStroke stroke(p);
    SectorBlocks x = WindowedStroke::identity_blocks(n_max);
    double t_prev = 0.0;
    record(0.0, identity(joint_dim(n_max)));
    for (int j = 1; j < samples; ++j) {
        const double t = length * j / (samples - 1);
        stroke.advance_converged(x, t_prev, t);
        record(t, stroke.to_joint(x, t, 0.0));
        t_prev = t;
    }
    return out;
}

} // namespace dce
