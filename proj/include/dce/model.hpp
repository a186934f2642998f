#pragma once

// Time-dependent Rabi Hamiltonian of one cold-isochore stroke:
//   H(t) = H0 + f(t) * g * (sigma_+ + sigma_-) (a^dagger + a)
//   H0   = -(omega_a / 2) sigma_z + omega (a^dagger a + 1/2)
// Units: hbar = k_B = 1, energies in units of the field frequency.

#include <string>

#include "dce/operators.hpp"

namespace dce {

enum class WindowKind { Rectangular, Hamming };

// Time-ordered product used for windowed strokes.
enum class Integrator {
    CommutatorFree4, // two-exponential 4th-order Magnus (Gauss points)
    Midpoint,        // exponential midpoint, 2nd order
};

struct SimParams {
    double g = 0.5;
    double tau = 3.141592653589793;
    double omega = 1.0;
    double omega_a = 1.0;
    WindowKind window = WindowKind::Rectangular;
    double alpha = 1.0; // Hamming stretch; ignored for Rectangular
    bool rwa = false;   // drop sigma_+ a^dagger and sigma_- a
    int n_max = 32;
    double step_tol = 1e-9;
    double trunc_tol = 1e-10;
    Integrator integrator = Integrator::CommutatorFree4;

    // Throws SimError(InvalidParameter) on any violated invariant.
    void validate() const;

    // tau for the rectangular window, alpha * tau for Hamming.
    double support_length() const;

    SimParams with_n_max(int n) const {
        SimParams p = *this;
        p.n_max = n;
        return p;
    }
};

std::string to_string(WindowKind w);
std::string to_string(Integrator i);
WindowKind parse_window(const std::string& s);
Integrator parse_integrator(const std::string& s);

ComplexMatrix h0(const SimParams& p);
// Coupling operator without the f(t) factor.
ComplexMatrix h_int(const SimParams& p);
double window_value(const SimParams& p, double t);
ComplexMatrix h_total(const SimParams& p, double t);

// pi / (2g): resonant Jaynes-Cummings time for |e,0> -> |g,1>.
double swap_time(double g);

// sigma_z (x) (-1)^{a^dagger a}; commutes with H(t) with or without RWA.
ComplexMatrix parity_operator(int n_max);
// -sigma_z / 2 (x) I + I (x) a^dagger a; conserved by the RWA coupling only.
ComplexMatrix excitation_number(int n_max);

} // namespace dce
