#include "dce/operators.hpp"

#include <cmath>
#include <string>

#include "dce/errors.hpp"

namespace dce {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kStateHermitianTol = 1e-12;
constexpr double kStateTraceTol = 1e-12;
constexpr double kStatePsdTol = -1e-10;
constexpr double kBlochTol = 1e-10;

} // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

JointState::JointState(ComplexMatrix rho, int n_max) : rho_(std::move(rho)), n_max_(n_max) {
    if (n_max_ < 1) {
        throw SimError(ErrorKind::InvalidParameter, "n_max must be >= 1");
    }
    if (rho_.rows() != joint_dim(n_max_) || rho_.cols() != joint_dim(n_max_)) {
        throw SimError(ErrorKind::InvalidState, "joint state dimension does not match n_max");
    }
    if (hermiticity_error(rho_) >= kStateHermitianTol) {
        throw SimError(ErrorKind::InvalidState, "joint state is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) >= kStateTraceTol) {
        throw SimError(ErrorKind::InvalidState, "joint state trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= kStatePsdTol) {
        throw SimError(ErrorKind::InvalidState, "joint state is not positive semidefinite");
    }
}

JointState JointState::product(const ComplexMatrix& rho_q, int n_max, int photons) {
    if (photons < 0 || photons > n_max) {
        throw SimError(ErrorKind::InvalidParameter, "Fock index outside truncation");
    }
    ComplexMatrix fock = ComplexMatrix::Zero(fock_dim(n_max), fock_dim(n_max));
    fock(photons, photons) = 1.0;
    return JointState(kron(rho_q, fock), n_max);
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix annihilation(int n_max) {
    if (n_max < 1) {
        throw SimError(ErrorKind::InvalidParameter, "n_max must be >= 1, got " + std::to_string(n_max));
    }
    ComplexMatrix a = ComplexMatrix::Zero(fock_dim(n_max), fock_dim(n_max));
    for (int n = 1; n <= n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexMatrix number_operator(int n_max) {
    ComplexMatrix a = annihilation(n_max);
    return a.adjoint() * a;
}

ComplexMatrix photon_parity(int n_max) {
    ComplexMatrix p = ComplexMatrix::Zero(fock_dim(n_max), fock_dim(n_max));
    for (int n = 0; n <= n_max; ++n) {
        p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

namespace pauli {

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix raising() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(kExcited, kGround) = 1.0;
    return m;
}

ComplexMatrix lowering() { return raising().adjoint(); }

} // namespace pauli

ComplexMatrix partial_trace_osc(const JointState& s) { return partial_trace_osc(s.rho(), s.n_max()); }

ComplexMatrix partial_trace_osc(const ComplexMatrix& rho, int n_max) {
    const int d = fock_dim(n_max);
    if (rho.rows() != joint_dim(n_max) || rho.cols() != joint_dim(n_max)) {
        throw SimError(ErrorKind::InvalidOperator, "partial trace: dimension mismatch");
    }
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = rho.block(i * d, j * d, d, d).trace();
        }
    }
    return out;
}

BlochVector bloch_of(const ComplexMatrix& rho_q) {
    if (rho_q.rows() != 2 || rho_q.cols() != 2) {
        throw SimError(ErrorKind::InvalidOperator, "bloch_of expects a 2x2 matrix");
    }
    // rho = (I + r.sigma)/2  =>  rho_01 = (x - iy)/2, z = rho_00 - rho_11
    return {2.0 * rho_q(0, 1).real(), -2.0 * rho_q(0, 1).imag(), (rho_q(0, 0) - rho_q(1, 1)).real()};
}

ComplexMatrix density_of(const BlochVector& r) {
    if (r.norm() > 1.0 + kBlochTol) {
        throw SimError(ErrorKind::InvalidState, "Bloch vector outside the unit ball");
    }
    ComplexMatrix rho(2, 2);
    rho << 0.5 * (1.0 + r.z), Complex(0.5 * r.x, -0.5 * r.y), Complex(0.5 * r.x, 0.5 * r.y), 0.5 * (1.0 - r.z);
    return rho;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw SimError(ErrorKind::InvalidOperator, "matrix is not square");
    }
    return max_abs(m - m.adjoint());
}

double unitarity_error(const ComplexMatrix& u) {
    return max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows())));
}

HermitianEigensystem::HermitianEigensystem(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) {
        throw SimError(ErrorKind::InvalidOperator, "Hamiltonian is not square");
    }
    if (hermiticity_error(h) >= kHermitianTol) {
        throw SimError(ErrorKind::InvalidOperator, "Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw SimError(ErrorKind::InvalidOperator, "Hermitian eigensolver failed");
    }
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

ComplexMatrix HermitianEigensystem::propagator(double t) const {
    ComplexVector phases(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
        phases(k) = std::polar(1.0, -values_(k) * t);
    }
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

ComplexVector HermitianEigensystem::evolve(const ComplexVector& psi, double t) const {
    ComplexVector c = vectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
        c(k) *= std::polar(1.0, -values_(k) * t);
    }
    return vectors_ * c;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) { return HermitianEigensystem(h).propagator(t); }

} // namespace dce
