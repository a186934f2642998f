#pragma once

// Closed-form resonant Jaynes-Cummings dynamics, used as a test oracle.

namespace dce {

enum class JCInitial { GroundVacuum, ExcitedVacuum };

// Qubit Bloch z at time t for the resonant RWA model. |g,0> is stationary;
// |e,0> Rabi-oscillates with |g,1>, z(t) = -cos(2gt).
double jc_bloch_z(double g, double t, JCInitial init);

} // namespace dce
