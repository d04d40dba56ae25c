#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "disclab/errors.hpp"
#include "disclab/flow.hpp"
#include "oracles.hpp"

using namespace disclab;

TEST_CASE("zero Hamiltonian gives a constant trajectory") {
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    const ComplexPoint z0(0.3, -0.2);
    const Trajectory traj = integrate(zero, z0);
    REQUIRE(traj.times().size() == 257);
    CHECK(traj.times().front() == 0.0);
    CHECK(traj.times().back() == 1.0);
    for (const ComplexPoint& p : traj.points()) {
        CHECK(p.re == z0.re);
        CHECK(p.im == z0.im);
    }
}

TEST_CASE("radial flows conserve the radius along the whole grid") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const Trajectory traj = integrate(h, ComplexPoint(0.5, 0.0));
    for (const ComplexPoint& p : traj.points()) CHECK(std::abs(p.abs() - 0.5) < 1e-9);
}

TEST_CASE("radial polynomial flow matches the closed-form rotation") {
    // angular speed 2 h'(0.25) = -3 at radius 0.5
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    CHECK(oracles::radial_poly_angular_speed(1.0, 2, 1.0, 0.5) == doctest::Approx(-3.0));

    const Trajectory traj = integrate(h, ComplexPoint(0.5, 0.0));
    const Complex expected = 0.5 * std::exp(Complex(0.0, -3.0));
    CHECK(std::abs(traj.final_point().value() - expected) < 1e-9);

    // dense output midway
    const Complex mid = traj.position(0.5);
    CHECK(std::abs(mid - 0.5 * std::exp(Complex(0.0, -1.5))) < 1e-8);
}

TEST_CASE("fixed-step convergence order is at least 3.5") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const Complex z0(0.5, 0.0);

    StepPolicy reference;
    reference.tolerance = 1e-12;
    const Complex ref = flow_endpoint(h, z0, 0.0, 1.0, reference);

    StepPolicy coarse;
    coarse.fixed_steps = 32;
    StepPolicy fine;
    fine.fixed_steps = 64;
    const double e1 = std::abs(flow_endpoint(h, z0, 0.0, 1.0, coarse) - ref);
    const double e2 = std::abs(flow_endpoint(h, z0, 0.0, 1.0, fine) - ref);
    const double order = std::log2(e1 / e2);
    INFO("errors ", e1, " -> ", e2, ", measured order ", order);
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
}

TEST_CASE("restarting at t = 0.5 matches the single run") {
    for (const HamiltonianSpec& h : {HamiltonianSpec::radial_polynomial(1.0, 2, 1.0),
                                     HamiltonianSpec::moving_bump(1.0, 0.25, 0.4)}) {
        RngStream rng(3);
        for (int i = 0; i < 10; ++i) {
            const Complex z0 = sample_disc_uniform(rng).value();
            const Complex direct = flow_endpoint(h, z0, 0.0, 1.0);
            const Complex half = flow_endpoint(h, z0, 0.0, 0.5);
            const Complex resumed = flow_endpoint(h, half, 0.5, 1.0);
            CHECK(std::abs(direct - resumed) < 1e-9);
        }
    }
}

TEST_CASE("points on or outside the support circle never move (bitwise)") {
    const HamiltonianSpec h = HamiltonianSpec::radial_bump(1.0, 0.8);
    RngStream rng(11);
    for (int i = 0; i < 50; ++i) {
        const double r = 0.8 + 0.2 * rng.next_double();
        const double a = 2.0 * oracles::kPi * rng.next_double();
        const ComplexPoint z0(r * std::cos(a), r * std::sin(a));
        const Trajectory traj = integrate(h, z0);
        CHECK(traj.steps_taken() == 0);
        for (const ComplexPoint& p : traj.points()) {
            CHECK(p.re == z0.re);
            CHECK(p.im == z0.im);
        }
    }
}

TEST_CASE("integrate rejects initial points outside the disc") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    CHECK_THROWS_AS(integrate(h, ComplexPoint(1.0 + 1e-6, 0.0)), std::invalid_argument);
}

TEST_CASE("jacobian determinant: identity map and catalog flows") {
    // identity map: exact up to ulp(z)/probe_offset rounding in the quotient
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    CHECK(std::abs(jacobian_determinant(zero, ComplexPoint(0.3, 0.1), 1.0) - 1.0) < 1e-9);

    RngStream rng(19);
    for (const HamiltonianSpec& h : {HamiltonianSpec::radial_polynomial(1.0, 2, 1.0),
                                     HamiltonianSpec::moving_bump(1.0, 0.25, 0.4)}) {
        for (int i = 0; i < 20; ++i) {
            const Complex z = 0.95 * sample_disc_uniform(rng).value();
            const double t = rng.next_double();
            const double det = jacobian_determinant(h, ComplexPoint(z), t);
            CHECK(std::abs(det - 1.0) <= 1e-6);
        }
    }
}

TEST_CASE("jacobian is exactly the identity outside the moving-bump tube") {
    const HamiltonianSpec h = HamiltonianSpec::moving_bump(1.0, 0.25, 0.4);
    // the swept tube is the annulus 0.15 <= |z| <= 0.65
    CHECK(std::abs(jacobian_determinant(h, ComplexPoint(0.05, 0.0), 1.0) - 1.0) < 1e-9);
    CHECK(std::abs(jacobian_determinant(h, ComplexPoint(0.0, 0.9), 0.7) - 1.0) < 1e-9);
}

TEST_CASE("pushforward invariance: trivial and catalog cases") {
    const PairFunctional f = [](Complex a, Complex b) { return (a * std::conj(b)).real(); };

    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    const InvarianceCheck trivial = pushforward_invariance_check(zero, f, 1.0, 2000, 5);
    CHECK(trivial.before == trivial.after);
    CHECK(trivial.sigma == 0.0);

    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const InvarianceCheck constant = pushforward_invariance_check(
        h, [](Complex, Complex) { return 1.0; }, 1.0, 2000, 5);
    CHECK(constant.after - constant.before == 0.0);
    CHECK(constant.sigma == 0.0);

    const InvarianceCheck check = pushforward_invariance_check(h, f, 1.0, 100000, 42);
    INFO("before ", check.before, " after ", check.after, " sigma ", check.sigma);
    CHECK(std::abs(check.after - check.before) <= 3.0 * check.sigma);
}
