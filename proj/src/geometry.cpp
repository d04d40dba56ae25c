#include "disclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ComplexPoint::ComplexPoint(double re_, double im_) : re(re_), im(im_) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("ComplexPoint: components must be finite");
}

ComplexPoint::ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

double ComplexPoint::abs() const { return std::hypot(re, im); }

PairConfiguration::PairConfiguration(ComplexPoint a, ComplexPoint b) : z1(a), z2(b) {
    if (z1.re == z2.re && z1.im == z2.im)
        throw std::invalid_argument("PairConfiguration: points must be distinct");
}

ComplexPoint sample_disc_uniform(RngStream& rng) {
    const double u = rng.next_double();
    const double v = rng.next_double();
    const double r = std::sqrt(u);
    const double angle = 2.0 * kPi * v;
    return ComplexPoint(r * std::cos(angle), r * std::sin(angle));
}

DiscRule disc_quadrature(int radial_order, int angular_order) {
    return disc_quadrature(radial_order, angular_order, {});
}

DiscRule disc_quadrature(int radial_order, int angular_order, std::vector<double> radial_s_breaks) {
    if (radial_order < 1 || angular_order < 1)
        throw std::invalid_argument("disc_quadrature: orders must be >= 1");

    std::vector<double> breaks{0.0};
    std::sort(radial_s_breaks.begin(), radial_s_breaks.end());
    for (double s : radial_s_breaks) {
        if (s > 1e-12 && s < 1.0 - 1e-12 && s - breaks.back() > 1e-12) breaks.push_back(s);
    }
    breaks.push_back(1.0);

    // dm = (1/2) ds dtheta after the substitution s = r^2.
    const Quad1D radial = composite_gauss_legendre(radial_order, breaks);
    const double dtheta = 2.0 * kPi / angular_order;

    DiscRule rule;
    rule.nodes.reserve(radial.nodes.size() * angular_order);
    rule.weights.reserve(radial.nodes.size() * angular_order);
    for (int k = 0; k < angular_order; ++k) {
        const double theta = dtheta * k;
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t j = 0; j < radial.nodes.size(); ++j) {
            const double r = std::sqrt(radial.nodes[j]);
            rule.nodes.emplace_back(r * c, r * s);
            rule.weights.push_back(0.5 * dtheta * radial.weights[j]);
        }
    }
    return rule;
}

}  // namespace disclab
