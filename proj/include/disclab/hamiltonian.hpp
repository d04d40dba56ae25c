#ifndef DISCLAB_HAMILTONIAN_HPP
#define DISCLAB_HAMILTONIAN_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "disclab/geometry.hpp"

namespace disclab {

class HamiltonianSpec;

/// H(z) = A (1 - |z|^2 / rho^2)^k on |z| <= rho, 0 outside. C^(k-1) at the
/// support edge; polynomial in s = |z|^2 inside, so the disc rule is exact.
struct RadialPolynomial {
    double amplitude;
    int exponent;  // k >= 2
    double support_radius;
};

/// H(z) = A exp(1 - 1/(1 - |z|^2 / rho^2)) on |z| < rho, 0 outside.
/// All derivatives vanish at the edge, so the profile is C-infinity.
struct RadialBump {
    double amplitude;
    double support_radius;
};

/// H_t(z) = B(z - c(t)) with B a radial bump of radius rho_b and
/// c(t) = R e^{2 pi i t}. Support is contained in |z| <= R + rho_b < 1.
struct MovingBump {
    double amplitude;
    double bump_radius;
    double orbit_radius;
};

/// H_t = g(t) H0 with g polynomial (coefficients in ascending order) and H0
/// an autonomous radial catalog entry.
struct TimeScaled {
    std::vector<double> gain;
    std::shared_ptr<const HamiltonianSpec> inner;
};

/// First Hamiltonian on [0, 1/2], second on [1/2, 1], each under a smooth
/// time warp whose rate vanishes to third order at the junctions; generates
/// the composition of the two time-one maps.
struct Concatenation {
    std::shared_ptr<const HamiltonianSpec> first;
    std::shared_ptr<const HamiltonianSpec> second;
};

/// Circle across which a profile is only finitely smooth (support edge).
struct EdgeCircle {
    Complex center;
    double radius;
};

/** A time-dependent compactly supported Hamiltonian from the catalog.
 * Values are immutable; all evaluations are pure. */
class HamiltonianSpec {
  public:
    using Family = std::variant<RadialPolynomial, RadialBump, MovingBump, TimeScaled, Concatenation>;

    static HamiltonianSpec radial_polynomial(double amplitude, int exponent, double support_radius);
    static HamiltonianSpec radial_bump(double amplitude, double support_radius);
    static HamiltonianSpec moving_bump(double amplitude, double bump_radius, double orbit_radius);
    static HamiltonianSpec time_scaled(std::vector<double> gain, HamiltonianSpec inner);

    const Family& family() const { return family_; }
    double support_radius() const { return support_radius_; }
    bool radial_autonomous() const;
    std::string family_name() const;

    /// Interior times where the profile is only finitely smooth in t
    /// (concatenation junctions); quadratures split there.
    std::vector<double> time_breakpoints() const;

    /// Spatial smoothness edges at time t.
    std::vector<EdgeCircle> edge_circles(double t) const;

    /// Radii rho with an origin-centered edge circle |z| = rho anywhere in the
    /// spec tree, as breakpoints in s = |z|^2 for radial quadrature splitting.
    std::vector<double> radial_edge_breaks() const;

  private:
    HamiltonianSpec(Family family, double support_radius);

    Family family_;
    double support_radius_;

    friend HamiltonianSpec concatenate(const HamiltonianSpec&, const HamiltonianSpec&);
};

/// Velocity reading xi = dz(X_t) of the generated field at a point.
struct VelocityValue {
    Complex xi;
};

/// H_t(z); exactly 0 for |z| >= support radius. Throws std::domain_error for
/// t outside [0, 1].
double evaluate(const HamiltonianSpec& h, double t, Complex z);

/// dH_t / dzbar = (H_x + i H_y) / 2, from the family's closed form.
Complex wirtinger_dzbar(const HamiltonianSpec& h, double t, Complex z);

/// xi_t = 2i dH_t/dzbar, equivalently (-H_y, H_x) read as a complex number.
VelocityValue velocity(const HamiltonianSpec& h, double t, Complex z);

/// Spec generating the flow of `first` followed by the flow of `second`.
HamiltonianSpec concatenate(const HamiltonianSpec& first, const HamiltonianSpec& second);

/// The smooth time warp used by concatenate (monotone [0,1] -> [0,1] with
/// derivative vanishing to third order at both ends) and its inverse.
double concat_time_warp(double u);
double concat_time_warp_rate(double u);
double concat_time_warp_inverse(double v);

}  // namespace disclab

#endif
