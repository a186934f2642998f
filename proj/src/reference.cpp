#include "dce/reference.hpp"

#include <cmath>

#include "dce/errors.hpp"

namespace dce {

double jc_bloch_z(double g, double t, JCInitial init) {
    if (!(g > 0.0) || !(t >= 0.0)) {
        throw SimError(ErrorKind::InvalidParameter, "jc_bloch_z needs g > 0 and t >= 0");
    }
    if (init == JCInitial::GroundVacuum) return 1.0;
    return -std::cos(2.0 * g * t);
}

} // namespace dce
