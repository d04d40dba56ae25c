#include "disclab/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disclab/quadrature.hpp"
#include "disclab/rng.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex horner(const std::vector<Complex>& coefficients, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex horner_derivative(const std::vector<Complex>& coefficients, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coefficients.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * coefficients[k];
    return acc;
}

// Distance from `center` to the unit circle along direction e (unit complex).
double ray_to_unit_circle(Complex center, Complex e) {
    const double b = center.real() * e.real() + center.imag() * e.imag();
    const double c = std::norm(center) - 1.0;
    return -b + std::sqrt(std::max(0.0, b * b - c));
}

// Integral of one ray of the source-centered polar decomposition, with the
// radial Gauss-Legendre rule split where the ray crosses an edge circle.
template <class G>
Complex polar_ray(Complex center, Complex e, int radial, const std::vector<EdgeCircle>& edges,
                  std::vector<double>& breaks, G&& g) {
    const double rmax = ray_to_unit_circle(center, e);
    if (rmax <= 1e-14) return Complex(0.0, 0.0);

    breaks.clear();
    breaks.push_back(0.0);
    for (const EdgeCircle& circle : edges) {
        const Complex offset = center - circle.center;
        const double b = offset.real() * e.real() + offset.imag() * e.imag();
        const double c = std::norm(offset) - circle.radius * circle.radius;
        const double disc = b * b - c;
        if (disc <= 0.0) continue;
        const double root = std::sqrt(disc);
        for (double r : {-b - root, -b + root})
            if (r > 1e-12 && r < rmax - 1e-12) breaks.push_back(r);
    }
    breaks.push_back(rmax);
    std::sort(breaks.begin(), breaks.end());

    Complex ray(0.0, 0.0);
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        if (breaks[s + 1] - breaks[s] < 1e-14) continue;
        const Quad1D rule = gauss_legendre(radial, breaks[s], breaks[s + 1]);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            ray += rule.weights[j] * g(center + rule.nodes[j] * e, e);
    }
    return ray;
}

// Quadrature of integral_0^{rmax(phi)} g(center + r e, e) dr dphi over the
// disc in source-centered polar coordinates; g must already include the
// cancellation of the kernel singularity against the area Jacobian r.
//
// Without edge circles the angular rule is the uniform trapezoid (spectral
// for periodic smooth integrands). Off-center edge circles produce angular
// boundary layers at their tangency directions, so the angular rule becomes
// composite Gauss-Legendre split at those angles.
template <class G>
Complex polar_about(Complex center, int angular, int radial, const std::vector<EdgeCircle>& edges,
                    G&& g) {
    std::vector<double> tangencies;
    for (const EdgeCircle& circle : edges) {
        const Complex offset = circle.center - center;
        const double dist = std::abs(offset);
        if (dist <= circle.radius) continue;  // center inside: every ray crosses
        const double alpha = std::arg(offset);
        const double beta = std::asin(std::min(1.0, circle.radius / dist));
        for (double a : {alpha - beta, alpha + beta}) {
            double wrapped = std::fmod(a, 2.0 * kPi);
            if (wrapped < 0.0) wrapped += 2.0 * kPi;
            tangencies.push_back(wrapped);
        }
    }

    std::vector<double> breaks;
    Complex total(0.0, 0.0);
    if (tangencies.empty()) {
        const double dphi = 2.0 * kPi / angular;
        for (int k = 0; k < angular; ++k) {
            const double phi = dphi * k;
            total += polar_ray(center, Complex(std::cos(phi), std::sin(phi)), radial, edges, breaks, g);
        }
        return total * dphi;
    }

    std::sort(tangencies.begin(), tangencies.end());
    std::vector<double> angular_breaks{tangencies.front()};
    for (double a : tangencies)
        if (a - angular_breaks.back() > 1e-12) angular_breaks.push_back(a);
    angular_breaks.push_back(angular_breaks.front() + 2.0 * kPi);

    const int per_segment = std::max(16, angular);
    for (std::size_t s = 0; s + 1 < angular_breaks.size(); ++s) {
        if (angular_breaks[s + 1] - angular_breaks[s] < 1e-12) continue;
        const Quad1D rule = gauss_legendre(per_segment, angular_breaks[s], angular_breaks[s + 1]);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double phi = rule.nodes[k];
            total += rule.weights[k] *
                     polar_ray(center, Complex(std::cos(phi), std::sin(phi)), radial, edges, breaks, g);
        }
    }
    return total;
}

}  // namespace

SmoothFunctionSpec SmoothFunctionSpec::holomorphic_polynomial(std::vector<Complex> coefficients) {
    return SmoothFunctionSpec(Body{HoloPoly{std::move(coefficients)}});
}

SmoothFunctionSpec SmoothFunctionSpec::antiholomorphic_polynomial(std::vector<Complex> coefficients) {
    return SmoothFunctionSpec(Body{AntiHoloPoly{std::move(coefficients)}});
}

SmoothFunctionSpec SmoothFunctionSpec::hamiltonian_at(HamiltonianSpec h, double t) {
    return SmoothFunctionSpec(Body{FrozenHamiltonian{std::move(h), t}});
}

Complex SmoothFunctionSpec::eval(Complex z) const {
    struct Visitor {
        Complex z;
        Complex operator()(const HoloPoly& p) const { return horner(p.coefficients, z); }
        Complex operator()(const AntiHoloPoly& p) const { return horner(p.coefficients, std::conj(z)); }
        Complex operator()(const FrozenHamiltonian& f) const {
            return Complex(evaluate(f.spec, f.t, z), 0.0);
        }
    };
    return std::visit(Visitor{z}, body_);
}

Complex SmoothFunctionSpec::dzbar(Complex z) const {
    struct Visitor {
        Complex z;
        Complex operator()(const HoloPoly&) const { return Complex(0.0, 0.0); }
        Complex operator()(const AntiHoloPoly& p) const {
            return horner_derivative(p.coefficients, std::conj(z));
        }
        Complex operator()(const FrozenHamiltonian& f) const { return wirtinger_dzbar(f.spec, f.t, z); }
    };
    return std::visit(Visitor{z}, body_);
}

std::vector<EdgeCircle> SmoothFunctionSpec::edge_circles() const {
    if (const auto* f = std::get_if<FrozenHamiltonian>(&body_)) return f->spec.edge_circles(f->t);
    return {};
}

CauchyPompeiuResult cauchy_pompeiu(const SmoothFunctionSpec& f, ComplexPoint w,
                                   const QuadratureOrders& orders) {
    if (!(w.abs() < 1.0 - 1e-3))
        throw std::domain_error("cauchy_pompeiu: evaluation point too close to the boundary");
    const Complex wc = w.value();

    // Boundary term (1/2pi i) integral f(z)/(z-w) dz on |z| = 1; with
    // z = e^{i theta} the trapezoid rule is the plain mean of f(z) z/(z-w).
    const int m = std::max(8, 4 * orders.angular);
    Complex boundary(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * kPi * k / m;
        const Complex z(std::cos(theta), std::sin(theta));
        boundary += f.eval(z) * z / (z - wc);
    }
    boundary /= static_cast<double>(m);

    // Area term: dz ^ dzbar = -2i dm turns the kernel integral into
    // -(1/pi) integral (df/dzbar)/(z-w) dm, evaluated in polar coordinates
    // about w so the Jacobian cancels the kernel.
    const Complex area =
        polar_about(wc, orders.angular, orders.radial, f.edge_circles(),
                    [&](Complex z, Complex e) { return f.dzbar(z) * std::conj(e); }) *
        (-1.0 / kPi);

    CauchyPompeiuResult out;
    out.boundary_term = boundary;
    out.area_term = area;
    out.reconstructed = boundary + area;
    return out;
}

double singular_mass(ComplexPoint z, int angular_order) {
    if (!DiscDomain{}.contains(z)) throw std::domain_error("singular_mass: point outside the disc");
    // The radial integral of (1/r) r dr is exact: the mass is the angular
    // mean of the chord length to the unit circle times 2 pi.
    const Complex center = z.value();
    double total = 0.0;
    for (int k = 0; k < angular_order; ++k) {
        const double phi = 2.0 * kPi * k / angular_order;
        total += ray_to_unit_circle(center, Complex(std::cos(phi), std::sin(phi)));
    }
    return total * (2.0 * kPi / angular_order);
}

Lemma1Check lemma1_bound_check(const HamiltonianSpec& h, double t, long samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("lemma1_bound_check: need >= 2 samples");
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("lemma1_bound_check: t outside [0,1]");

    std::vector<double> values(samples);
    for (long i = 0; i < samples; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        Complex z1 = sample_disc_uniform(rng).value();
        Complex z2 = sample_disc_uniform(rng).value();
        while (std::abs(z1 - z2) < kCollisionGuard) {
            z1 = sample_disc_uniform(rng).value();
            z2 = sample_disc_uniform(rng).value();
        }
        values[i] = std::abs(velocity(h, t, z1).xi - velocity(h, t, z2).xi) / std::abs(z1 - z2);
    }

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= samples;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (samples - 1.0);

    const DiscRule rule = disc_quadrature(128, 128, h.radial_edge_breaks());
    const double mass_xi = rule.integrate([&](Complex z) { return std::abs(velocity(h, t, z).xi); });

    Lemma1Check out;
    out.estimate = kPi * kPi * mean;
    out.sigma = kPi * kPi * std::sqrt(var / samples);
    out.majorant = 8.0 * kPi * mass_xi;
    return out;
}

CauchyCalabiCheck cauchy_calabi_identity(const HamiltonianSpec& h, double t,
                                         const QuadratureOrders& orders) {
    const std::vector<EdgeCircle> edges = h.edge_circles(t);
    const DiscRule outer = disc_quadrature(orders.radial, orders.angular, h.radial_edge_breaks());
    const int inner_radial = std::max(16, orders.radial / 2);

    Complex lhs(0.0, 0.0);
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const Complex w = outer.nodes[i].value();
        const Complex transform =
            polar_about(w, orders.angular, inner_radial, edges,
                        [&](Complex z, Complex e) { return wirtinger_dzbar(h, t, z) * std::conj(e); }) *
            (-1.0 / kPi);
        lhs += outer.weights[i] * transform;
    }

    CauchyCalabiCheck out;
    out.lhs = lhs;
    out.rhs = outer.integrate([&](Complex z) { return evaluate(h, t, z); });
    return out;
}

}  // namespace disclab
