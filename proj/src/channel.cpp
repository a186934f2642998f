#include "dce/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dce/errors.hpp"

namespace dce {

void validate_qubit_state(const ComplexMatrix& rho_q) {
    if (rho_q.rows() != 2 || rho_q.cols() != 2) {
        throw SimError(ErrorKind::InvalidOperator, "qubit state must be 2x2");
    }
    if (hermiticity_error(rho_q) >= 1e-12 || std::abs(rho_q.trace() - Complex(1.0)) >= 1e-12) {
        throw SimError(ErrorKind::InvalidState, "qubit state must be Hermitian with unit trace");
    }
    if (bloch_of(rho_q).norm() > 1.0 + 1e-10) {
        throw SimError(ErrorKind::InvalidState, "qubit state is not positive");
    }
}

QubitChannel::QubitChannel(const Propagator& u) {
    const Eigen::Index dim = u.u.rows();
    if (dim < 4 || dim % 2 != 0 || u.u.cols() != dim) {
        throw SimError(ErrorKind::InvalidOperator, "propagator is not a joint-space operator");
    }
    const int n_max = static_cast<int>(dim) / 2 - 1;
    kraus_.resize(fock_dim(n_max));
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                kraus_[n](i, j) = u.u(joint_index(i, n, n_max), joint_index(j, 0, n_max));
            }
        }
    }
    // sum K^dagger K = I holds only to the propagator's roundoff (~1e-14),
    // which compounds over 1e5 cycles. Fold S^{-1/2} back into the Kraus set.
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(s);
    if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.5)) {
        throw SimError(ErrorKind::InvalidOperator, "propagator does not conserve the vacuum-column norm");
    }
    const Eigen::Matrix2cd inv_sqrt = es.operatorInverseSqrt();
    for (auto& k : kraus_) k = k * inv_sqrt;
}

ComplexMatrix QubitChannel::apply(const ComplexMatrix& rho_q) const {
    const Eigen::Matrix2cd rho = rho_q;
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& k : kraus_) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

ComplexMatrix apply_cycle(const ComplexMatrix& rho_q, const Propagator& u) {
    validate_qubit_state(rho_q);
    return QubitChannel(u).apply(rho_q);
}

AffineMap affine_tomography(const Propagator& u) { return affine_tomography(QubitChannel(u)); }

AffineMap affine_tomography(const QubitChannel& channel) {
    AffineMap map;
    const Eigen::Vector3d center = bloch_of(channel.apply(density_of({0.0, 0.0, 0.0}))).as_vector();
    const std::array<BlochVector, 3> poles{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    map.a = center;
    for (int k = 0; k < 3; ++k) {
        map.m.col(k) = bloch_of(channel.apply(density_of(poles[k]))).as_vector() - center;
    }
    map.residual = structure_residual(map);
    return map;
}

double structure_residual(const AffineMap& map) {
    const std::array<double, 6> off{map.m(0, 2), map.m(1, 2), map.m(2, 0), map.m(2, 1), map.a(0), map.a(1)};
    double r = 0.0;
    for (double v : off) r = std::max(r, std::abs(v));
    return r;
}

ComplexMatrix choi_of(const AffineMap& map) {
    const std::array<ComplexMatrix, 3> sigma{pauli::x(), pauli::y(), pauli::z()};
    const ComplexMatrix id = identity(2);
    ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            ComplexMatrix x = ComplexMatrix::Zero(2, 2);
            x(i, j) = 1.0;
            // X = (tr X I + s.sigma)/2 with complex s_k = tr(X sigma_k)
            const Complex tr = x.trace();
            Eigen::Vector3cd s;
            for (int k = 0; k < 3; ++k) s(k) = (x * sigma[k]).trace();
            const Eigen::Vector3cd ms = map.m.cast<Complex>() * s;
            ComplexMatrix image = tr * id;
            for (int k = 0; k < 3; ++k) image += (tr * map.a(k) + ms(k)) * sigma[k];
            choi.block(2 * i, 2 * j, 2, 2) = 0.5 * image;
        }
    }
    return choi;
}

double choi_min_eigenvalue(const AffineMap& map) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi_of(map), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ComplexMatrix choi_input_marginal(const ComplexMatrix& choi) {
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out(i, j) = choi.block(2 * i, 2 * j, 2, 2).trace();
    }
    return out;
}

} // namespace dce
