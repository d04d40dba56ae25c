#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "disclab/cauchy.hpp"
#include "oracles.hpp"

using namespace disclab;

TEST_CASE("holomorphic reconstruction: f(z) = z^2 at w = 0.3 + 0.2i") {
    const SmoothFunctionSpec f = SmoothFunctionSpec::holomorphic_polynomial({0.0, 0.0, 1.0});
    const CauchyPompeiuResult r = cauchy_pompeiu(f, ComplexPoint(0.3, 0.2));
    CHECK(std::abs(r.reconstructed - Complex(0.05, 0.12)) < 1e-10);
    CHECK(std::abs(r.area_term) < 1e-10);
}

TEST_CASE("antiholomorphic f(z) = zbar at w = 0: both terms cancel") {
    const SmoothFunctionSpec f = SmoothFunctionSpec::antiholomorphic_polynomial({0.0, 1.0});
    const CauchyPompeiuResult r = cauchy_pompeiu(f, ComplexPoint(0.0, 0.0));
    CHECK(std::abs(r.reconstructed) < 1e-8);
}

TEST_CASE("boundary-vanishing Hamiltonians reconstruct from the area term alone") {
    const std::vector<HamiltonianSpec> entries = {
        HamiltonianSpec::radial_bump(1.0, 0.8),
        HamiltonianSpec::moving_bump(1.0, 0.25, 0.4),
    };
    RngStream rng(55);
    for (const HamiltonianSpec& h : entries) {
        const SmoothFunctionSpec f = SmoothFunctionSpec::hamiltonian_at(h, 0.3);
        for (int i = 0; i < 5; ++i) {
            const ComplexPoint w(0.9 * sample_disc_uniform(rng).value());
            const CauchyPompeiuResult r = cauchy_pompeiu(f, w);
            CHECK(r.boundary_term == Complex(0.0, 0.0));
            const Complex expected = f.eval(w.value());
            CHECK(std::abs(r.area_term - expected) <= 1e-6 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("reconstruction error stays below 1e-6 across test functions and points") {
    const std::vector<SmoothFunctionSpec> functions = {
        SmoothFunctionSpec::holomorphic_polynomial({Complex(0.5, -0.2), Complex(1.0, 1.0), Complex(0.0, 0.0), Complex(-0.3, 0.7)}),
        SmoothFunctionSpec::antiholomorphic_polynomial({Complex(0.1, 0.0), Complex(0.0, -1.0), Complex(0.4, 0.4)}),
        SmoothFunctionSpec::hamiltonian_at(HamiltonianSpec::radial_polynomial(1.0, 2, 1.0), 0.0),
        SmoothFunctionSpec::hamiltonian_at(HamiltonianSpec::radial_bump(1.0, 0.8), 0.5),
        SmoothFunctionSpec::hamiltonian_at(HamiltonianSpec::moving_bump(1.0, 0.25, 0.4), 0.7),
    };
    RngStream rng(66);
    for (const SmoothFunctionSpec& f : functions) {
        for (int i = 0; i < 20; ++i) {
            const ComplexPoint w(0.95 * sample_disc_uniform(rng).value());
            const CauchyPompeiuResult r = cauchy_pompeiu(f, w);
            const Complex expected = f.eval(w.value());
            CHECK(std::abs(r.reconstructed - expected) <= 1e-6 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("cauchy_pompeiu rejects near-boundary evaluation points") {
    const SmoothFunctionSpec f = SmoothFunctionSpec::holomorphic_polynomial({1.0});
    CHECK_THROWS_AS(cauchy_pompeiu(f, ComplexPoint(0.9995, 0.0)), std::domain_error);
}

TEST_CASE("singular mass: center value, global bound, boundary value") {
    CHECK(std::abs(singular_mass(ComplexPoint(0.0, 0.0)) - 2.0 * oracles::kPi) < 1e-8);

    RngStream rng(12);
    for (int i = 0; i < 1000; ++i) {
        const double v = singular_mass(sample_disc_uniform(rng));
        CHECK(v > 0.0);
        CHECK(v <= 4.0 * oracles::kPi);
    }

    const double boundary = singular_mass(ComplexPoint(1.0, 0.0));
    CHECK(boundary > 0.0);
    CHECK(boundary <= 4.0 * oracles::kPi);
}

TEST_CASE("singular mass is continuous in the source point") {
    RngStream rng(21);
    for (int i = 0; i < 20; ++i) {
        const ComplexPoint z(0.99 * sample_disc_uniform(rng).value());
        const ComplexPoint z_shift(z.re + 1e-3, z.im);
        CHECK(std::abs(singular_mass(z) - singular_mass(z_shift)) <= 1e-2);
    }
}

TEST_CASE("lemma-1 bound: estimate below the 8 pi majorant") {
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    const Lemma1Check trivial = lemma1_bound_check(zero, 0.0, 1000, 5);
    CHECK(trivial.estimate == 0.0);
    CHECK(trivial.majorant == 0.0);

    const Lemma1Check radial =
        lemma1_bound_check(HamiltonianSpec::radial_polynomial(1.0, 2, 1.0), 0.0, 100000, 42);
    INFO("estimate ", radial.estimate, " majorant ", radial.majorant, " sigma ", radial.sigma);
    CHECK(radial.estimate <= radial.majorant + 3.0 * radial.sigma);

    const Lemma1Check moving =
        lemma1_bound_check(HamiltonianSpec::moving_bump(1.0, 0.25, 0.4), 0.5, 100000, 42);
    INFO("estimate ", moving.estimate, " majorant ", moving.majorant, " sigma ", moving.sigma);
    CHECK(moving.estimate <= moving.majorant + 3.0 * moving.sigma);
}

TEST_CASE("disc-averaged Cauchy reconstruction identity") {
    const HamiltonianSpec zero = HamiltonianSpec::radial_polynomial(0.0, 2, 1.0);
    const CauchyCalabiCheck trivial = cauchy_calabi_identity(zero, 0.0);
    CHECK(trivial.lhs == Complex(0.0, 0.0));
    CHECK(trivial.rhs == 0.0);

    const CauchyCalabiCheck poly =
        cauchy_calabi_identity(HamiltonianSpec::radial_polynomial(1.0, 2, 1.0), 0.4);
    CHECK(std::abs(poly.rhs - oracles::kPi / 3.0) < 1e-10);
    INFO("lhs ", poly.lhs, " rhs ", poly.rhs);
    CHECK(std::abs(poly.lhs - poly.rhs) <= 1e-6 * (1.0 + std::abs(poly.rhs)));
    CHECK(std::abs(poly.lhs.imag()) <= 1e-8);

    const CauchyCalabiCheck bump = cauchy_calabi_identity(HamiltonianSpec::radial_bump(1.0, 0.8), 0.0);
    INFO("lhs ", bump.lhs, " rhs ", bump.rhs);
    CHECK(std::abs(bump.lhs - bump.rhs) <= 1e-6 * (1.0 + std::abs(bump.rhs)));
    CHECK(std::abs(bump.lhs.imag()) <= 1e-8);
}
