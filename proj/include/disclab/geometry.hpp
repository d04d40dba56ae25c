#ifndef DISCLAB_GEOMETRY_HPP
#define DISCLAB_GEOMETRY_HPP

#include <complex>
#include <vector>

#include "disclab/quadrature.hpp"
#include "disclab/rng.hpp"

namespace disclab {

using Complex = std::complex<double>;

/// Admissible excess of re^2 + im^2 over 1 for points tagged as disc points.
inline constexpr double kContainmentSlack = 1e-12;

/// Separation below which two points count as a numerical collision.
inline constexpr double kCollisionGuard = 1e-14;

/** A point z of the closed unit disc in complex coordinates.
 * Components are always finite; containment is checked by DiscDomain. */
struct ComplexPoint {
    double re = 0.0;
    double im = 0.0;

    ComplexPoint() = default;
    ComplexPoint(double re_, double im_);  // throws std::invalid_argument on NaN/inf
    explicit ComplexPoint(Complex z);

    Complex value() const { return Complex(re, im); }
    double abs2() const { return re * re + im * im; }
    double abs() const;
};

/** The unit disc D = {|z| <= 1} with Lebesgue measure dm = dx dy.
 * The symplectic area form (i/2) dz ^ dzbar equals dm in these conventions,
 * so the total measure is pi. */
struct DiscDomain {
    double slack = kContainmentSlack;

    bool contains(const ComplexPoint& p) const { return p.abs2() <= 1.0 + slack; }
    bool contains(Complex z) const { return std::norm(z) <= 1.0 + slack; }
    static double measure() { return 3.14159265358979323846; }
};

/** An ordered off-diagonal pair x = (z1, z2): a point of the configuration
 * space D x D minus the diagonal. Coincident points are rejected. */
struct PairConfiguration {
    ComplexPoint z1;
    ComplexPoint z2;

    PairConfiguration(ComplexPoint a, ComplexPoint b);  // throws on z1 == z2
    double separation() const { return std::abs(z1.value() - z2.value()); }
};

/// Uniform draw from the open unit disc. Consumes exactly two variates
/// (r = sqrt(u), angle = 2 pi v), so the draw count per sample is fixed.
ComplexPoint sample_disc_uniform(RngStream& rng);

/** Quadrature rule over the disc: interior nodes, positive weights that sum
 * to pi within rounding. */
struct DiscRule {
    std::vector<ComplexPoint> nodes;
    std::vector<double> weights;

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i].value());
        return acc;
    }

    template <class F>
    Complex integrate_complex(F&& f) const {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i].value());
        return acc;
    }
};

/** Tensor rule: Gauss-Legendre in s = r^2 on [0,1] composed with a uniform
 * (trapezoid) angular rule. Exact for radial parts polynomial in s up to
 * degree 2*radial_order - 1 and angular Fourier modes below angular_order.
 *
 * radial_s_breaks lists interior breakpoints in the s variable (for
 * integrands whose radial profile loses smoothness on a circle |z|^2 = s). */
DiscRule disc_quadrature(int radial_order, int angular_order);
DiscRule disc_quadrature(int radial_order, int angular_order, std::vector<double> radial_s_breaks);

}  // namespace disclab

#endif
