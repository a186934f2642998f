#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dce/errors.hpp"
#include "dce/evolve.hpp"
#include "dce/reference.hpp"
#include "oracles.hpp"

using namespace dce;

namespace {

SimParams hamming(double g, double alpha, int n_max) {
    SimParams p;
    p.g = g;
    p.tau = swap_time(g);
    p.window = WindowKind::Hamming;
    p.alpha = alpha;
    p.n_max = n_max;
    return p;
}

ComplexVector vacuum(int n_max, int q = kGround) {
    ComplexVector psi = ComplexVector::Zero(joint_dim(n_max));
    psi(joint_index(q, 0, n_max)) = 1.0;
    return psi;
}

} // namespace

TEST_CASE("propagate_constant") {
    SimParams p;
    p.n_max = 4;
    const ComplexMatrix h = h_total(p, 0.0);
    const Propagator u0 = propagate_constant(h, 0.0);
    CHECK(max_abs(u0.u - identity(h.rows())) < 1e-14);
    CHECK(u0.steps_used == 1);

    // |g,0> has zero energy under h0 at resonance
    const Propagator uh = propagate_constant(h0(p), 2.7);
    CHECK(std::abs(uh.u(0, 0) - Complex(1.0)) < 1e-14);

    CHECK_THROWS_AS(propagate_constant(h, -1.0), SimError);
    ComplexMatrix bad = h;
    bad(0, 1) += 1.0;
    try {
        propagate_constant(bad, 1.0);
        FAIL("accepted a non-Hermitian generator");
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::InvalidOperator);
    }
}

TEST_CASE("resonant swap under RWA") {
    SimParams p;
    p.g = 0.5;
    p.tau = std::numbers::pi;
    p.rwa = true;
    p.n_max = 4;
    const Propagator u = propagate_windowed(p);
    const ComplexVector psi = u.u * vacuum(p.n_max, kExcited);
    CHECK(std::abs(probe_z(psi, p.n_max) - 1.0) < 1e-12);
    CHECK(std::norm(psi(joint_index(kGround, 1, p.n_max))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("windowed propagation with g = 0") {
    SimParams p = hamming(0.5, 2.0, 3);
    p.g = 0.0;
    p.tau = 1.3;
    const Propagator u = propagate_windowed(p);
    CHECK(max_abs(u.u - expm_hermitian(h0(p), p.alpha * p.tau)) < 1e-13);
    for (int steps : {1, 7}) {
        CHECK(max_abs(propagate_windowed_fixed(p, steps).u - expm_hermitian(h0(p), p.alpha * p.tau)) < 1e-13);
    }
}

TEST_CASE("windowed propagation against RK4") {
    for (Integrator integ : {Integrator::CommutatorFree4, Integrator::Midpoint}) {
        SimParams p = hamming(0.3, 1.0, 6);
        p.integrator = integ;
        const Propagator u = propagate_windowed(p);
        const ComplexMatrix ref = oracle::rk4_propagator(p, 20000);
        CHECK(max_abs(u.u - ref) < 1e-8);
        CHECK(unitarity_error(u.u) < 1e-10);
    }
    SimParams p = hamming(1.0, 2.0, 8);
    CHECK(max_abs(propagate_windowed(p).u - oracle::rk4_propagator(p, 20000)) < 1e-8);
}

TEST_CASE("convergence order of the product formulas") {
    SimParams p = hamming(0.5, 1.0, 6);
    auto ratio = [&](Integrator integ, int n) {
        p.integrator = integ;
        const ComplexMatrix a = propagate_windowed_fixed(p, n).u;
        const ComplexMatrix b = propagate_windowed_fixed(p, 2 * n).u;
        const ComplexMatrix c = propagate_windowed_fixed(p, 4 * n).u;
        const double d1 = max_abs(b - a);
        const double d2 = max_abs(c - b);
        CHECK(d2 < d1);
        return d1 / d2;
    };
    const double mid = ratio(Integrator::Midpoint, 128);
    CHECK(mid == doctest::Approx(4.0).epsilon(0.1));
    const double cf4 = ratio(Integrator::CommutatorFree4, 64);
    CHECK(cf4 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("windowed rectangular input routes to the constant path") {
    SimParams p;
    p.g = 0.4;
    p.tau = 2.0;
    p.n_max = 5;
    const Propagator u = propagate_windowed(p);
    CHECK(u.steps_used == 1);
    CHECK(max_abs(u.u - expm_hermitian(h_total(p, 0.0), 2.0)) < 1e-13);
}

TEST_CASE("step ceiling is reported") {
    SimParams p = hamming(0.5, 1.0, 1);
    p.step_tol = 1e-300;
    try {
        propagate_windowed(p);
        FAIL("expected convergence failure");
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::ConvergenceFailure);
    }
    CHECK_THROWS_AS(propagate_windowed_fixed(p, 0), SimError);
}

TEST_CASE("ensure_truncation") {
    SimParams p;
    p.g = 0.0;
    p.tau = 3.0;
    p.n_max = 6;
    CHECK(ensure_truncation(p) == 6);

    SimParams weak;
    weak.g = 0.1;
    weak.tau = swap_time(0.1);
    weak.n_max = 2;
    SimParams strong = weak;
    strong.g = 1.0;
    strong.tau = swap_time(1.0);
    const int n_weak = ensure_truncation(weak);
    const int n_strong = ensure_truncation(strong);
    CHECK(n_weak == 8);
    CHECK(n_strong > n_weak);

    // The converged cutoff reproduces z of a much larger space.
    const double z_conv = probe_z(probe_stroke(strong.with_n_max(n_strong)), n_strong);
    const double z_big = probe_z(probe_stroke(strong.with_n_max(64)), 64);
    CHECK(std::abs(z_conv - z_big) < 1e-10);

    // A probe that never settles runs into the ceiling.
    const StrokeProbe spread = [](const SimParams& q) {
        return ComplexVector::Constant(joint_dim(q.n_max), Complex(1.0 / std::sqrt(joint_dim(q.n_max))));
    };
    try {
        ensure_truncation(weak, spread);
        FAIL("expected truncation failure");
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::TruncationFailure);
    }
}

TEST_CASE("build_stroke records the cutoff") {
    SimParams p;
    p.g = 0.5;
    p.tau = std::numbers::pi;
    p.n_max = 4;
    const Propagator u = build_stroke(p);
    CHECK(u.trunc_used == ensure_truncation(p));
    CHECK(u.n_max() == u.trunc_used);
}

TEST_CASE("stroke trajectories") {
    SUBCASE("RWA ground state is stationary") {
        SimParams p;
        p.g = 0.5;
        p.tau = 4.0 * swap_time(0.5);
        p.rwa = true;
        const ComplexMatrix gg = density_of({0, 0, 1});
        const auto traj = stroke_trajectory(p, JointState::product(gg, 6), 50);
        REQUIRE(traj.size() == 50);
        CHECK(traj.front().t == 0.0);
        CHECK(traj.back().t == doctest::Approx(p.tau).epsilon(1e-15));
        for (const auto& pt : traj) {
            CHECK(std::abs(pt.r.z - 1.0) < 1e-12);
            CHECK(std::abs(pt.mean_n) < 1e-12);
        }
    }
    SUBCASE("counter-rotating terms heat the ground state") {
        SimParams p;
        p.g = 0.3;
        p.tau = 2.3;
        const auto traj = stroke_trajectory(p, JointState::product(density_of({0, 0, 1}), 16), 10);
        CHECK(traj.back().r.z < 1.0 - 1e-6);
        CHECK(traj.back().mean_n > 1e-8);
    }
    SUBCASE("vacuum Rabi oscillation") {
        SimParams p;
        p.g = 0.5;
        p.tau = 3.0 * swap_time(0.5);
        p.rwa = true;
        const auto traj = stroke_trajectory(p, JointState::product(density_of({0, 0, -1}), 4), 40);
        for (const auto& pt : traj) {
            CHECK(std::abs(pt.r.z - jc_bloch_z(p.g, pt.t, JCInitial::ExcitedVacuum)) < 1e-10);
        }
    }
    SUBCASE("Hamming trajectory ends on the stroke propagator") {
        SimParams p = hamming(0.7, 2.0, 12);
        const JointState rho0 = JointState::product(density_of({0.3, -0.2, 0.5}), 12);
        const auto traj = stroke_trajectory(p, rho0, 9);
        const ComplexMatrix u = propagate_windowed(p).u;
        const BlochVector r = bloch_of(partial_trace_osc(u * rho0.rho() * u.adjoint(), 12));
        CHECK(traj.back().t == doctest::Approx(p.support_length()).epsilon(1e-15));
        CHECK(std::abs(traj.back().r.x - r.x) < 1e-8);
        CHECK(std::abs(traj.back().r.y - r.y) < 1e-8);
        CHECK(std::abs(traj.back().r.z - r.z) < 1e-8);
        for (const auto& pt : traj) CHECK(pt.r.norm() <= 1.0 + 1e-10);
    }
    CHECK_THROWS_AS(stroke_trajectory(SimParams{}, JointState::product(density_of({0, 0, 1}), 2), 1), SimError);
}
