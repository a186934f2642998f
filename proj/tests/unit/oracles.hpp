#pragma once
// Independent reference computations for the unit and acceptance tests. None
// of these call into the library code they are used to check, apart from the
// Hamiltonian builders.

#include <cmath>
#include <random>

#include "dce/model.hpp"
#include "dce/operators.hpp"

namespace oracle {

using dce::Complex;
using dce::ComplexMatrix;
using dce::ComplexVector;

// exp(A) by scaling and squaring of a plain Taylor series.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    const ComplexMatrix x = a * scale;
    ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Classical RK4 on dU/dt = -i H(t) U in the Schroedinger picture.
inline ComplexMatrix rk4_propagator(const dce::SimParams& p, int steps) {
    const double total = p.support_length();
    const double h = total / steps;
    const Complex mi(0.0, -1.0);
    ComplexMatrix u = ComplexMatrix::Identity(dce::joint_dim(p.n_max), dce::joint_dim(p.n_max));
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const ComplexMatrix h1 = dce::h_total(p, t);
        const ComplexMatrix h2 = dce::h_total(p, t + 0.5 * h);
        const ComplexMatrix h3 = dce::h_total(p, t + h);
        const ComplexMatrix k1 = mi * h1 * u;
        const ComplexMatrix k2 = mi * h2 * (u + 0.5 * h * k1);
        const ComplexMatrix k3 = mi * h2 * (u + 0.5 * h * k2);
        const ComplexMatrix k4 = mi * h3 * (u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

// Tr_osc by explicit index summation: (rho_q)_{ab} = sum_n rho_{(a,n),(b,n)}.
inline ComplexMatrix partial_trace_sum(const ComplexMatrix& rho, int n_max) {
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int n = 0; n <= n_max; ++n)
                out(a, b) += rho(dce::joint_index(a, n, n_max), dce::joint_index(b, n, n_max));
    return out;
}

// Embed with the vacuum, conjugate, trace out the oscillator.
inline ComplexMatrix literal_cycle(const ComplexMatrix& rho_q, const ComplexMatrix& u, int n_max) {
    ComplexMatrix vac = ComplexMatrix::Zero(n_max + 1, n_max + 1);
    vac(0, 0) = 1.0;
    ComplexMatrix joint = ComplexMatrix::Zero(2 * (n_max + 1), 2 * (n_max + 1));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            joint.block(a * (n_max + 1), b * (n_max + 1), n_max + 1, n_max + 1) = rho_q(a, b) * vac;
    return partial_trace_sum(u * joint * u.adjoint(), n_max);
}

// Composite Simpson rule with n (even) intervals.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> d;
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
    const ComplexMatrix m = random_matrix(rng, dim, dim);
    return 0.5 * (m + m.adjoint());
}

// Random density matrix G G^dagger / tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, int dim) {
    const ComplexMatrix g = random_matrix(rng, dim, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

// Random point in the Bloch ball.
inline dce::BlochVector random_bloch(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const dce::BlochVector r{u(rng), u(rng), u(rng)};
        if (r.x * r.x + r.y * r.y + r.z * r.z <= 1.0) return r;
    }
}

} // namespace oracle
