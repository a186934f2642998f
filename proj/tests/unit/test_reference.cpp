#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dce/errors.hpp"
#include "dce/model.hpp"
#include "dce/reference.hpp"

using namespace dce;

TEST_CASE("Jaynes-Cummings closed form") {
    for (double g : {0.1, 0.5, 1.3}) {
        CHECK(jc_bloch_z(g, swap_time(g), JCInitial::ExcitedVacuum) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(jc_bloch_z(g, std::numbers::pi / (4.0 * g), JCInitial::ExcitedVacuum)) < 1e-15);
        CHECK(jc_bloch_z(g, 0.0, JCInitial::ExcitedVacuum) == -1.0);
        for (double t : {0.0, 0.4, 7.0}) CHECK(jc_bloch_z(g, t, JCInitial::GroundVacuum) == 1.0);
    }
    CHECK_THROWS_AS(jc_bloch_z(0.0, 1.0, JCInitial::ExcitedVacuum), SimError);
    CHECK_THROWS_AS(jc_bloch_z(0.5, -1.0, JCInitial::GroundVacuum), SimError);
}
