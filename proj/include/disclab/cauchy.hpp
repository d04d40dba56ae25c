#ifndef DISCLAB_CAUCHY_HPP
#define DISCLAB_CAUCHY_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "disclab/calabi.hpp"
#include "disclab/hamiltonian.hpp"

namespace disclab {

/** A C^1 test function on the closed disc with a closed-form d/dzbar:
 * holomorphic polynomials (d/dzbar = 0), antiholomorphic polynomials
 * p(zbar), or a catalog Hamiltonian frozen at one time. */
class SmoothFunctionSpec {
  public:
    static SmoothFunctionSpec holomorphic_polynomial(std::vector<Complex> coefficients);
    static SmoothFunctionSpec antiholomorphic_polynomial(std::vector<Complex> coefficients);
    static SmoothFunctionSpec hamiltonian_at(HamiltonianSpec h, double t);

    Complex eval(Complex z) const;
    Complex dzbar(Complex z) const;
    std::vector<EdgeCircle> edge_circles() const;

  private:
    struct HoloPoly {
        std::vector<Complex> coefficients;
    };
    struct AntiHoloPoly {
        std::vector<Complex> coefficients;
    };
    struct FrozenHamiltonian {
        HamiltonianSpec spec;
        double t;
    };
    using Body = std::variant<HoloPoly, AntiHoloPoly, FrozenHamiltonian>;

    explicit SmoothFunctionSpec(Body body) : body_(std::move(body)) {}
    Body body_;
};

/** Reconstruction of f(w) from the boundary Cauchy integral plus the area
 * integral of df/dzbar against the Cauchy kernel. The boundary term uses the
 * trapezoid rule on |z| = 1 (exactly zero when f vanishes on the circle);
 * the area term uses polar quadrature centered at w, whose Jacobian cancels
 * the kernel singularity. Requires |w| < 1 - 1e-3. */
struct CauchyPompeiuResult {
    Complex reconstructed{0.0, 0.0};
    Complex boundary_term{0.0, 0.0};
    Complex area_term{0.0, 0.0};
};

CauchyPompeiuResult cauchy_pompeiu(const SmoothFunctionSpec& f, ComplexPoint w,
                                   const QuadratureOrders& orders = {});

/** integral over D of dm(w) / |z - w|: the singular mass of the Cauchy
 * kernel about z. Reduces to the angular average of the chord length to the
 * unit circle; bounded by 4 pi, equal to 2 pi at the center. */
double singular_mass(ComplexPoint z, int angular_order = 512);

/// Monte Carlo estimate of the pair-difference quotient mass against its
/// quadrature majorant 8 pi * integral |xi_t| dm.
struct Lemma1Check {
    double estimate = 0.0;
    double sigma = 0.0;
    double majorant = 0.0;
};

Lemma1Check lemma1_bound_check(const HamiltonianSpec& h, double t, long samples, std::uint64_t seed);

/// Both sides of the disc-averaged Cauchy reconstruction identity at fixed t:
/// lhs integrates the kernel transform of dH_t/dzbar over the evaluation
/// point, rhs integrates H_t directly.
struct CauchyCalabiCheck {
    Complex lhs{0.0, 0.0};
    double rhs = 0.0;
};

CauchyCalabiCheck cauchy_calabi_identity(const HamiltonianSpec& h, double t,
                                         const QuadratureOrders& orders = {});

}  // namespace disclab

#endif
