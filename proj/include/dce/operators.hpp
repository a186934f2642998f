#pragma once

// Dense operator algebra on the qubit (x) truncated-oscillator space.
//
// Basis order: joint index k = q * (n_max + 1) + n with q = 0 for |g>,
// q = 1 for |e>, n the photon number. The qubit is always the slow index.
// |g> is the sigma_z = +1 eigenvector, so Bloch z = +1 is the ground state.

#include <complex>

#include <Eigen/Dense>

namespace dce {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum Qubit : int { kGround = 0, kExcited = 1 };

constexpr int fock_dim(int n_max) { return n_max + 1; }
constexpr int joint_dim(int n_max) { return 2 * (n_max + 1); }
constexpr int joint_index(int qubit, int photons, int n_max) {
    return qubit * (n_max + 1) + photons;
}

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Eigen::Vector3d as_vector() const { return {x, y, z}; }
    static BlochVector from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

// Density matrix of qubit (x) oscillator. Construction validates Hermiticity,
// unit trace and positivity; the stored matrix is never mutated afterwards.
class JointState {
public:
    JointState(ComplexMatrix rho, int n_max);

    // rho_q (x) |n><n| for a 2x2 qubit density matrix.
    static JointState product(const ComplexMatrix& rho_q, int n_max, int photons = 0);

    const ComplexMatrix& rho() const { return rho_; }
    int n_max() const { return n_max_; }
    int dim() const { return joint_dim(n_max_); }

private:
    ComplexMatrix rho_;
    int n_max_;
};

ComplexMatrix identity(int dim);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// a|n> = sqrt(n)|n-1> on the (n_max + 1)-dimensional Fock space.
ComplexMatrix annihilation(int n_max);
ComplexMatrix number_operator(int n_max);
// (-1)^{a^dagger a}
ComplexMatrix photon_parity(int n_max);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
// sigma_+ |g> = |e>
ComplexMatrix raising();
ComplexMatrix lowering();
} // namespace pauli

// Tr_osc over the contiguous (n_max + 1)-blocks.
ComplexMatrix partial_trace_osc(const JointState& s);
ComplexMatrix partial_trace_osc(const ComplexMatrix& rho, int n_max);

BlochVector bloch_of(const ComplexMatrix& rho_q);
ComplexMatrix density_of(const BlochVector& r);

double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& u);
double max_abs(const ComplexMatrix& m);

// Eigenpairs of a Hermitian matrix, reusable for e^{-iHt} at many t.
class HermitianEigensystem {
public:
    explicit HermitianEigensystem(const ComplexMatrix& h);

    ComplexMatrix propagator(double t) const;
    ComplexVector evolve(const ComplexVector& psi, double t) const;

    const Eigen::VectorXd& eigenvalues() const { return values_; }
    const ComplexMatrix& eigenvectors() const { return vectors_; }
    int dim() const { return static_cast<int>(values_.size()); }

private:
    Eigen::VectorXd values_;
    ComplexMatrix vectors_;
};

// e^{-iHt} via eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

} // namespace dce
