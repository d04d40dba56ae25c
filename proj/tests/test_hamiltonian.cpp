#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/flow.hpp"
#include "disclab/hamiltonian.hpp"
#include "oracles.hpp"

using namespace disclab;

namespace {

std::vector<HamiltonianSpec> catalog() {
    return {
        HamiltonianSpec::radial_polynomial(1.0, 2, 1.0),
        HamiltonianSpec::radial_polynomial(0.7, 3, 0.8),
        HamiltonianSpec::radial_bump(1.0, 0.8),
        HamiltonianSpec::moving_bump(1.0, 0.25, 0.4),
        HamiltonianSpec::time_scaled({0.0, 2.0}, HamiltonianSpec::radial_polynomial(1.0, 3, 0.9)),
        concatenate(HamiltonianSpec::radial_polynomial(0.5, 2, 1.0),
                    HamiltonianSpec::moving_bump(0.8, 0.2, 0.3)),
    };
}

// Distance from z to the nearest spatial smoothness edge of h at time t.
double edge_distance(const HamiltonianSpec& h, double t, Complex z) {
    double dist = 1.0 - std::abs(z);
    for (const EdgeCircle& c : h.edge_circles(t))
        dist = std::min(dist, std::abs(std::abs(z - c.center) - c.radius));
    return dist;
}

}  // namespace

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(HamiltonianSpec::radial_polynomial(1.0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSpec::radial_polynomial(1.0, 2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSpec::radial_bump(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSpec::moving_bump(1.0, 0.5, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(
        HamiltonianSpec::time_scaled({1.0}, HamiltonianSpec::moving_bump(1.0, 0.2, 0.3)),
        std::invalid_argument);
}

TEST_CASE("evaluate: radial polynomial closed form") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    CHECK(evaluate(h, 0.0, Complex(0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    // h(s) = (1-s)^2 at s = 0.25
    CHECK(evaluate(h, 0.5, Complex(0.5, 0.0)) == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(evaluate(h, 0.5, Complex(0.5, 0.0)) == doctest::Approx((1.0 - 0.25) * (1.0 - 0.25)));
}

TEST_CASE("evaluate vanishes on the unit circle for every family") {
    for (const HamiltonianSpec& h : catalog()) {
        for (double t : {0.0, 0.3, 1.0}) {
            CHECK(evaluate(h, t, Complex(1.0, 0.0)) == 0.0);
            CHECK(evaluate(h, t, Complex(0.0, -1.0)) == 0.0);
            CHECK(evaluate(h, t, Complex(0.6, 0.8)) == 0.0);
        }
    }
}

TEST_CASE("evaluate rejects time outside [0,1]") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    CHECK_THROWS_AS(evaluate(h, 1.5, Complex(0.1, 0.0)), std::domain_error);
    CHECK_THROWS_AS(evaluate(h, -0.2, Complex(0.1, 0.0)), std::domain_error);
    CHECK_THROWS_AS(velocity(h, 2.0, Complex(0.1, 0.0)).xi.real(), std::domain_error);
}

TEST_CASE("wirtinger derivative: closed form and finite differences") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    // H = h(|z|^2) gives dH/dzbar = h'(|z|^2) z; at z = 0.5, h'(0.25) = -1.5
    const Complex d = wirtinger_dzbar(h, 0.0, Complex(0.5, 0.0));
    CHECK(d.real() == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(d.imag() == doctest::Approx(0.0));

    const Complex fd = oracles::fd_dzbar(
        [&](Complex z) { return Complex(evaluate(h, 0.0, z), 0.0); }, Complex(0.5, 0.0));
    CHECK(std::abs(d - fd) < 1e-9);
}

TEST_CASE("finite-difference oracle sign conventions on Re z") {
    // d(Re z)/dzbar = 1/2 and the induced field (-H_y, H_x) equals i.
    const auto re_z = [](Complex z) { return z.real(); };
    const Complex d = oracles::fd_dzbar([&](Complex z) { return Complex(re_z(z), 0.0); },
                                        Complex(0.2, -0.3));
    CHECK(std::abs(d - Complex(0.5, 0.0)) < 1e-9);
    const Complex v = oracles::fd_velocity(re_z, Complex(0.2, -0.3));
    CHECK(std::abs(v - Complex(0.0, 1.0)) < 1e-9);
    // 2 i * (1/2) = i: both readings of the velocity agree
    CHECK(std::abs(Complex(0.0, 2.0) * d - v) < 1e-8);
}

TEST_CASE("velocity: radial example and compact support") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const Complex v = velocity(h, 0.0, Complex(0.5, 0.0)).xi;
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("velocity equals 2i d/dzbar at random points") {
    RngStream rng(5);
    for (const HamiltonianSpec& h : catalog()) {
        for (int i = 0; i < 1000; ++i) {
            const double t = rng.next_double();
            const Complex z = sample_disc_uniform(rng).value();
            const Complex v = velocity(h, t, z).xi;
            const Complex two_i_dzbar = Complex(0.0, 2.0) * wirtinger_dzbar(h, t, z);
            CHECK(std::abs(v - two_i_dzbar) < 1e-14 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("velocity matches the finite-difference gradient at step 1e-5 (gentle profiles)") {
    RngStream rng(5);
    for (const HamiltonianSpec& h : {HamiltonianSpec::radial_polynomial(1.0, 2, 1.0),
                                     HamiltonianSpec::radial_polynomial(0.7, 3, 0.8)}) {
        for (int i = 0; i < 1000; ++i) {
            const double t = rng.next_double();
            const Complex z = sample_disc_uniform(rng).value();
            if (edge_distance(h, t, z) < 1e-4) continue;
            const Complex v = velocity(h, t, z).xi;
            const Complex fd = oracles::fd_velocity([&](Complex p) { return evaluate(h, t, p); }, z, 1e-5);
            CHECK(std::abs(v - fd) <= 1e-7 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("velocity matches a fourth-order finite-difference gradient on the full catalog") {
    // The sharp bump profiles have third derivatives of order 1e6; the
    // second-order stencil cannot reach 1e-7 there, the fourth-order one can.
    RngStream rng(5);
    for (const HamiltonianSpec& h : catalog()) {
        for (int i = 0; i < 1000; ++i) {
            const double t = rng.next_double();
            const Complex z = sample_disc_uniform(rng).value();
            if (edge_distance(h, t, z) < 5e-4) continue;
            const Complex v = velocity(h, t, z).xi;
            const Complex fd = oracles::fd_velocity4([&](Complex p) { return evaluate(h, t, p); }, z);
            CHECK(std::abs(v - fd) <= 1e-7 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("generated fields are divergence-free") {
    RngStream rng(17);
    for (const HamiltonianSpec& h : catalog()) {
        for (int i = 0; i < 1000; ++i) {
            const double t = rng.next_double();
            const Complex z = 0.95 * sample_disc_uniform(rng).value();
            if (edge_distance(h, t, z) < 5e-4) continue;
            const double div = oracles::fd_divergence4(
                [&](Complex p) { return velocity(h, t, p).xi; }, z);
            CHECK(std::abs(div) <= 1e-6);
        }
    }
}

TEST_CASE("evaluate and velocity vanish identically on the support annulus") {
    RngStream rng(23);
    for (const HamiltonianSpec& h : catalog()) {
        const double rho = h.support_radius();
        if (rho >= 1.0) continue;
        for (int i = 0; i < 1000; ++i) {
            const double r = rho + (1.0 - rho) * rng.next_double();
            const double a = 2.0 * oracles::kPi * rng.next_double();
            const Complex z(r * std::cos(a), r * std::sin(a));
            const double t = rng.next_double();
            CHECK(evaluate(h, t, z) == 0.0);
            CHECK(velocity(h, t, z).xi == Complex(0.0, 0.0));
        }
    }
}

TEST_CASE("second time/space derivatives are bounded and step-size consistent") {
    RngStream rng(31);
    for (const HamiltonianSpec& h : catalog()) {
        int checked = 0;
        for (int i = 0; checked < 100 && i < 1000; ++i) {
            const double t = 0.1 + 0.8 * rng.next_double();
            const Complex z = sample_disc_uniform(rng).value();
            if (edge_distance(h, t, z) < 0.05) continue;
            bool near_junction = false;
            for (double b : h.time_breakpoints())
                if (std::abs(t - b) < 0.05) near_junction = true;
            if (near_junction) continue;
            ++checked;

            const auto second = [&](double step) {
                const double spatial = (evaluate(h, t, z + Complex(step, 0.0)) -
                                        2.0 * evaluate(h, t, z) +
                                        evaluate(h, t, z - Complex(step, 0.0))) /
                                       (step * step);
                const double temporal =
                    (evaluate(h, t + step, z) - 2.0 * evaluate(h, t, z) + evaluate(h, t - step, z)) /
                    (step * step);
                return std::make_pair(spatial, temporal);
            };
            const auto [sx1, st1] = second(1e-4);
            const auto [sx2, st2] = second(5e-5);
            CHECK(std::abs(sx1) < 1e6);
            CHECK(std::abs(st1) < 1e6);
            CHECK(std::abs(sx1 - sx2) <= 0.05 * (1.0 + std::abs(sx1)));
            CHECK(std::abs(st1 - st2) <= 0.05 * (1.0 + std::abs(st1)));
        }
    }
}

TEST_CASE("time-scaled family evaluates as g(t) times the frozen profile") {
    const HamiltonianSpec inner = HamiltonianSpec::radial_polynomial(1.0, 3, 0.9);
    const HamiltonianSpec h = HamiltonianSpec::time_scaled({0.0, 2.0}, inner);
    const Complex z(0.4, 0.2);
    for (double t : {0.0, 0.25, 1.0})
        CHECK(evaluate(h, t, z) == doctest::Approx(2.0 * t * evaluate(inner, 0.0, z)).epsilon(1e-14));
}

TEST_CASE("concatenation warp is a smooth monotone bijection") {
    CHECK(concat_time_warp(0.0) == 0.0);
    CHECK(concat_time_warp(1.0) == 1.0);
    CHECK(concat_time_warp(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(concat_time_warp_rate(0.0) == 0.0);
    CHECK(concat_time_warp_rate(1.0) == 0.0);
    for (double v : {0.0, 0.1, 0.37, 0.5, 0.82, 1.0}) {
        const double u = concat_time_warp_inverse(v);
        CHECK(concat_time_warp(u) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("concatenation with the zero Hamiltonian reproduces the flow") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(0.8, 2, 0.9);
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 0.9);
    const HamiltonianSpec combined = concatenate(h, zero);
    CHECK(combined.time_breakpoints() == std::vector<double>{0.5});
    CHECK(combined.support_radius() == doctest::Approx(0.9));

    RngStream rng(77);
    for (int i = 0; i < 20; ++i) {
        const Complex z0 = sample_disc_uniform(rng).value();
        const Complex direct = flow_endpoint(h, z0, 0.0, 1.0);
        const Complex via_concat = flow_endpoint(combined, z0, 0.0, 1.0);
        CHECK(std::abs(direct - via_concat) < 1e-8);
    }
}
