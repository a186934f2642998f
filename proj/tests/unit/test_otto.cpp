#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "dce/errors.hpp"
#include "dce/otto.hpp"

using namespace dce;

namespace {

AffineMap diagonal_map(double mxy, double mzz, double az) {
    AffineMap map;
    map.m = Eigen::Matrix3d::Zero();
    map.m(0, 0) = mxy;
    map.m(1, 1) = mxy;
    map.m(2, 2) = mzz;
    map.a(2) = az;
    return map;
}

Propagator rect_stroke(double g, double tau, bool rwa) {
    SimParams p;
    p.g = g;
    p.tau = tau;
    p.rwa = rwa;
    p.n_max = 8;
    return build_stroke(p);
}

} // namespace

TEST_CASE("iterate") {
    const AffineMap map = diagonal_map(0.5, 0.3, 0.2);
    const CycleTrajectory t0 = iterate({0.1, 0.2, 0.3}, map, 0);
    REQUIRE(t0.entries.size() == 1);
    CHECK(t0.entries[0].r.y == 0.2);

    const AffineMap swap = affine_tomography(rect_stroke(0.5, std::numbers::pi, true));
    const CycleTrajectory t = iterate({0, 0, -1}, swap, 5);
    for (std::size_t k = 1; k < t.entries.size(); ++k) {
        CHECK(t.entries[k].n == static_cast<int>(k));
        CHECK(std::abs(t.entries[k].r.z - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(iterate({0, 0, 1}, map, -1), SimError);
    CHECK_THROWS_AS(iterate({0, 0, 1.1}, map, 1), SimError);
}

TEST_CASE("affine and Kraus iteration agree") {
    const Propagator u = rect_stroke(0.6, 2.1, false);
    const AffineMap map = affine_tomography(u);
    const CycleTrajectory a = iterate({0.6, -0.3, 0.2}, map, 200);
    const CycleTrajectory b = iterate_channel({0.6, -0.3, 0.2}, QubitChannel(u), 200);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        CHECK(std::abs(a.entries[k].r.x - b.entries[k].r.x) < 1e-12);
        CHECK(std::abs(a.entries[k].r.z - b.entries[k].r.z) < 1e-12);
    }
}

TEST_CASE("iterate until converged") {
    const AffineMap map = diagonal_map(0.5, 0.9, 0.05);
    const CycleTrajectory t = iterate_until_converged({1.0, 0.0, 0.0}, map);
    CHECK(std::abs(t.entries.back().r.z - 0.5) < 1e-12);
    CHECK(t.entries.size() < 1000);
    const CycleTrajectory capped = iterate_until_converged({0, 0, 1}, map, 10);
    CHECK(capped.entries.size() == 11);
}

TEST_CASE("fixed point") {
    const FixedPointReport swap = fixed_point(diagonal_map(0.0, 0.0, 1.0));
    REQUIRE(swap.z_inf);
    CHECK(*swap.z_inf == 1.0);

    const FixedPointReport id = fixed_point(AffineMap{});
    CHECK(id.degenerate);
    CHECK_FALSE(id.z_inf);

    const FixedPointReport half = fixed_point(diagonal_map(0.2, 0.5, 0.25));
    CHECK(*half.z_inf == 0.5);
    CHECK(half.xy_decay_modulus == doctest::Approx(0.2));
    CHECK(half.xy_transient_factor == doctest::Approx(1.0));

    AffineMap broken = diagonal_map(0.2, 0.5, 0.25);
    broken.m(2, 0) = 1e-3;
    try {
        fixed_point(broken);
        FAIL("expected structure violation");
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::StructureViolation);
    }
}

TEST_CASE("temperature") {
    CHECK(temperature(1.0, 1.0).value == 0.0);
    CHECK(temperature(0.0, 1.0).value == std::numeric_limits<double>::infinity());
    CHECK(temperature(0.2, 1.0).value == doctest::Approx(2.466303462).epsilon(1e-9));
    CHECK(temperature(0.2, 2.0).value == doctest::Approx(2.0 * 2.466303462).epsilon(1e-9));
    const Temperature inv = temperature(-0.2, 1.0);
    CHECK(inv.inverted);
    CHECK(inv.value == doctest::Approx(-2.466303462).epsilon(1e-9));
    CHECK_FALSE(temperature(0.5, 1.0).inverted);
    CHECK_THROWS_AS(temperature(1.01, 1.0), SimError);
    CHECK_THROWS_AS(temperature(-1.01, 1.0), SimError);
}

TEST_CASE("convergence check") {
    const Propagator u = rect_stroke(0.5, std::numbers::pi, false);
    const AffineMap map = affine_tomography(u);
    const FixedPointReport rep = fixed_point(map);
    for (BlochVector r0 : {BlochVector{0, 0, 1}, BlochVector{1, 0, 0}, BlochVector{0, -0.7, 0.7}}) {
        const CycleTrajectory t = iterate(r0, map, 60);
        CHECK(convergence_check(t, rep) < 1e-10);
    }
    // |x_n|, |y_n| from the plus state decay exponentially
    const CycleTrajectory plus = iterate({1, 0, 0}, map, 40);
    CHECK(rep.xy_decay_modulus < 1.0);
    CHECK(std::hypot(plus.entries[40].r.x, plus.entries[40].r.y) < 1e-15);
    CHECK(std::hypot(plus.entries[20].r.x, plus.entries[20].r.y) > 0.0);

    CHECK_THROWS_AS(convergence_check(plus, fixed_point(AffineMap{})), SimError);
}

TEST_CASE("slow convergence near m_zz = 1") {
    const double z0_offset = 1.0;
    const int n = cycles_to_reach(0.99, z0_offset, 1e-3);
    CHECK(n > 400);
    CHECK(n == static_cast<int>(std::ceil(std::log(1e-3) / std::log(0.99))));
    const AffineMap map = diagonal_map(0.0, 0.99, 0.005); // z_inf = 0.5
    const CycleTrajectory t = iterate({0, 0, 1.0}, map, n);
    CHECK(std::abs(t.entries[n].r.z - 0.5) < 0.5e-3);
    CHECK(std::abs(t.entries[n - 1].r.z - 0.5) >= 0.5e-3);
    CHECK(cycles_to_reach(0.5, 1e-9, 1e-6) == 0);
}
