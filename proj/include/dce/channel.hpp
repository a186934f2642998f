#pragma once

// One Otto cycle as a qubit channel: rho -> Tr_osc[U (rho (x) |0><0|) U^dagger],
// and its Fano-Bloch form r -> M r + a.

#include <vector>

#include "dce/evolve.hpp"
#include "dce/operators.hpp"

namespace dce {

struct AffineMap {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    Eigen::Vector3d a = Eigen::Vector3d::Zero();
    double residual = 0.0;

    BlochVector apply(const BlochVector& r) const { return BlochVector::from(m * r.as_vector() + a); }
    double m_zz() const { return m(2, 2); }
    double a_z() const { return a(2); }
    // Upper-left xy block of m.
    Eigen::Matrix2d xy_block() const { return m.topLeftCorner<2, 2>(); }
};

// Kraus operators K_n = <n|U|0> (2x2 each) of the vacuum-reset cycle.
class QubitChannel {
public:
    explicit QubitChannel(const Propagator& u);

    ComplexMatrix apply(const ComplexMatrix& rho_q) const;
    const std::vector<Eigen::Matrix2cd>& kraus() const { return kraus_; }

private:
    std::vector<Eigen::Matrix2cd> kraus_;
};

// rho_q must be a valid qubit state; u any joint-space propagator.
ComplexMatrix apply_cycle(const ComplexMatrix& rho_q, const Propagator& u);

// Probes: Bloch center and the +x, +y, +z poles. All 12 parameters are kept.
AffineMap affine_tomography(const Propagator& u);
AffineMap affine_tomography(const QubitChannel& channel);

// Largest of |m_xz|, |m_yz|, |m_zx|, |m_zy|, |a_x|, |a_y|.
double structure_residual(const AffineMap& map);

// Choi matrix sum_ij |i><j| (x) E(|i><j|), input index slow.
ComplexMatrix choi_of(const AffineMap& map);
double choi_min_eigenvalue(const AffineMap& map);
// Tr over the output factor; I_2 for a trace-preserving map.
ComplexMatrix choi_input_marginal(const ComplexMatrix& choi);

void validate_qubit_state(const ComplexMatrix& rho_q);

} // namespace dce
