#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "disclab/calabi.hpp"
#include "oracles.hpp"

using namespace disclab;

TEST_CASE("zero Hamiltonian has zero Calabi invariant") {
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    const CalabiResult r = calabi(zero);
    CHECK(r.value == 0.0);
    CHECK(r.est_error == 0.0);
}

TEST_CASE("radial polynomial: Cal = pi/3") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const CalabiResult r = calabi(h);
    CHECK(std::abs(r.value - oracles::kPi / 3.0) < 1e-10);
    CHECK(r.est_error < 1e-10);
}

TEST_CASE("radial polynomial with interior support edge") {
    const HamiltonianSpec h = HamiltonianSpec::radial_polynomial(0.7, 3, 0.8);
    const CalabiResult r = calabi(h);
    CHECK(std::abs(r.value - oracles::radial_poly_space_integral(0.7, 3, 0.8)) < 1e-10);
}

TEST_CASE("time scaling by g(t) = 2t leaves the autonomous value") {
    const HamiltonianSpec inner = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const HamiltonianSpec h = HamiltonianSpec::time_scaled({0.0, 2.0}, inner);
    CHECK(std::abs(calabi(h).value - calabi(inner).value) < 1e-10);
}

TEST_CASE("calabi additivity is exact for polynomial profiles") {
    // both pieces integrate exactly under the tensor rule
    const HamiltonianSpec a = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const HamiltonianSpec b = HamiltonianSpec::radial_polynomial(0.7, 3, 0.8);
    const double sum = calabi(a).value + calabi(b).value;
    const double joint = calabi(concatenate(a, b)).value;
    CHECK(std::abs(joint - sum) < 1e-10);
}

TEST_CASE("calabi is additive under concatenation") {
    // the off-center bump converges slowly below radial order ~128
    const QuadratureOrders orders{128, 128, 32};
    const HamiltonianSpec a = HamiltonianSpec::radial_polynomial(1.0, 2, 1.0);
    const HamiltonianSpec b = HamiltonianSpec::moving_bump(1.0, 0.25, 0.4);
    const double sum = calabi(a, orders).value + calabi(b, orders).value;
    const double joint = calabi(concatenate(a, b), orders).value;
    INFO("joint ", joint, " sum ", sum);
    CHECK(std::abs(joint - sum) < 1e-9);
}

TEST_CASE("calabi is exactly linear in the amplitude") {
    const double base = calabi(HamiltonianSpec::radial_bump(1.0, 0.8)).value;
    for (double c : {-3.0, 0.25, 7.0}) {
        const double scaled = calabi(HamiltonianSpec::radial_bump(c, 0.8)).value;
        CHECK(std::abs(scaled - c * base) <= 1e-12 * (1.0 + std::abs(scaled)));
    }
}

TEST_CASE("moving bump has the Calabi invariant of its stationary profile") {
    const QuadratureOrders orders{128, 128, 32};
    const HamiltonianSpec moving = HamiltonianSpec::moving_bump(1.0, 0.25, 0.4);
    const HamiltonianSpec still = HamiltonianSpec::radial_bump(1.0, 0.25);
    const CalabiResult a = calabi(moving, orders);
    const CalabiResult b = calabi(still, orders);
    INFO("moving ", a.value, " (err ", a.est_error, ") still ", b.value, " (err ", b.est_error, ")");
    CHECK(std::abs(a.value - b.value) < 1e-9);
}

TEST_CASE("bump mass matches an independent high-order reference") {
    const HamiltonianSpec still = HamiltonianSpec::radial_bump(1.0, 0.25);
    const double expected = oracles::kPi * 0.25 * 0.25 * oracles::bump_profile_mass();
    CHECK(calabi(still).value == doctest::Approx(expected).epsilon(1e-7));
}
