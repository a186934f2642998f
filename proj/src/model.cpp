#include "dce/model.hpp"

#include <cmath>
#include <numbers>

#include "dce/errors.hpp"

namespace dce {

void SimParams::validate() const {
    auto fail = [](const std::string& msg) { throw SimError(ErrorKind::InvalidParameter, msg); };
    if (!(g >= 0.0) || !std::isfinite(g)) fail("g must be >= 0");
    if (!(tau >= 0.0) || !std::isfinite(tau)) fail("tau must be >= 0");
    if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be > 0");
    if (!(omega_a > 0.0) || !std::isfinite(omega_a)) fail("omega_a must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be > 0");
    if (n_max < 1) fail("n_max must be >= 1");
    if (!(step_tol > 0.0)) fail("step_tol must be > 0");
    if (!(trunc_tol > 0.0)) fail("trunc_tol must be > 0");
}

double SimParams::support_length() const { return window == WindowKind::Hamming ? alpha * tau : tau; }

std::string to_string(WindowKind w) { return w == WindowKind::Hamming ? "hamming" : "rect"; }

std::string to_string(Integrator i) { return i == Integrator::Midpoint ? "midpoint" : "cf4"; }

WindowKind parse_window(const std::string& s) {
    if (s == "rect" || s == "rectangular") return WindowKind::Rectangular;
    if (s == "hamming") return WindowKind::Hamming;
    throw SimError(ErrorKind::InvalidParameter, "unknown window '" + s + "'");
}

Integrator parse_integrator(const std::string& s) {
    if (s == "cf4") return Integrator::CommutatorFree4;
    if (s == "midpoint") return Integrator::Midpoint;
    throw SimError(ErrorKind::InvalidParameter, "unknown integrator '" + s + "'");
}

ComplexMatrix h0(const SimParams& p) {
    p.validate();
    const int d = fock_dim(p.n_max);
    ComplexMatrix h = ComplexMatrix::Zero(joint_dim(p.n_max), joint_dim(p.n_max));
    for (int n = 0; n < d; ++n) {
        const double field = p.omega * (n + 0.5);
        h(joint_index(kGround, n, p.n_max), joint_index(kGround, n, p.n_max)) = -0.5 * p.omega_a + field;
        h(joint_index(kExcited, n, p.n_max), joint_index(kExcited, n, p.n_max)) = 0.5 * p.omega_a + field;
    }
    return h;
}

ComplexMatrix h_int(const SimParams& p) {
    p.validate();
    const ComplexMatrix a = annihilation(p.n_max);
    const ComplexMatrix ad = a.adjoint();
    if (p.rwa) {
        return p.g * (kron(pauli::raising(), a) + kron(pauli::lowering(), ad));
    }
    return p.g * kron(pauli::raising() + pauli::lowering(), ad + a);
}

double window_value(const SimParams& p, double t) {
    if (t < 0.0) return 0.0;
    if (p.window == WindowKind::Rectangular) {
        return t <= p.tau ? 1.0 : 0.0;
    }
    const double support = p.alpha * p.tau;
    if (support <= 0.0 || t > support) return 0.0;
    return (1.0 - std::cos(2.0 * std::numbers::pi * t / support)) / p.alpha;
}

ComplexMatrix h_total(const SimParams& p, double t) {
    const double f = window_value(p, t);
    if (f == 0.0) return h0(p);
    return h0(p) + f * h_int(p);
}

double swap_time(double g) {
    if (!(g > 0.0)) {
        throw SimError(ErrorKind::InvalidParameter, "swap time needs g > 0");
    }
    return std::numbers::pi / (2.0 * g);
}

ComplexMatrix parity_operator(int n_max) { return kron(pauli::z(), photon_parity(n_max)); }

ComplexMatrix excitation_number(int n_max) {
    return kron(-0.5 * pauli::z(), identity(fock_dim(n_max))) + kron(identity(2), number_operator(n_max));
}

} // namespace dce
