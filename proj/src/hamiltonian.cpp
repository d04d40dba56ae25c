#include "disclab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disclab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTimeSlack = 1e-12;

double clamp_time(double t) {
    if (!(t >= -kTimeSlack && t <= 1.0 + kTimeSlack))
        throw std::domain_error("Hamiltonian time parameter outside [0,1]");
    return std::min(std::max(t, 0.0), 1.0);
}

double powi(double x, int n) {
    double acc = 1.0;
    while (n > 0) {
        if (n & 1) acc *= x;
        x *= x;
        n >>= 1;
    }
    return acc;
}

double poly_eval(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

// Radial profiles as functions of s = |z|^2: value and derivative dh/ds.

double poly_profile(const RadialPolynomial& f, double s) {
    const double rho2 = f.support_radius * f.support_radius;
    if (s >= rho2) return 0.0;
    return f.amplitude * powi(1.0 - s / rho2, f.exponent);
}

double poly_profile_ds(const RadialPolynomial& f, double s) {
    const double rho2 = f.support_radius * f.support_radius;
    if (s >= rho2) return 0.0;
    return -(f.amplitude * f.exponent / rho2) * powi(1.0 - s / rho2, f.exponent - 1);
}

double bump_profile(double amplitude, double rho, double s) {
    const double u = s / (rho * rho);
    if (u >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - u));
}

double bump_profile_ds(double amplitude, double rho, double s) {
    const double rho2 = rho * rho;
    const double u = s / rho2;
    if (u >= 1.0) return 0.0;
    const double v = 1.0 - u;
    return -amplitude * std::exp(1.0 - 1.0 / v) / (rho2 * v * v);
}

Complex orbit_center(const MovingBump& f, double t) {
    const double a = 2.0 * kPi * t;
    return Complex(f.orbit_radius * std::cos(a), f.orbit_radius * std::sin(a));
}

struct EvalVisitor {
    double t;
    Complex z;

    double operator()(const RadialPolynomial& f) const { return poly_profile(f, std::norm(z)); }
    double operator()(const RadialBump& f) const {
        return bump_profile(f.amplitude, f.support_radius, std::norm(z));
    }
    double operator()(const MovingBump& f) const {
        return bump_profile(f.amplitude, f.bump_radius, std::norm(z - orbit_center(f, t)));
    }
    double operator()(const TimeScaled& f) const {
        return poly_eval(f.gain, t) * evaluate(*f.inner, 0.0, z);
    }
    double operator()(const Concatenation& f) const {
        if (t <= 0.5) {
            const double u = 2.0 * t;
            return 2.0 * concat_time_warp_rate(u) * evaluate(*f.first, concat_time_warp(u), z);
        }
        const double u = 2.0 * t - 1.0;
        return 2.0 * concat_time_warp_rate(u) * evaluate(*f.second, concat_time_warp(u), z);
    }
};

struct DzbarVisitor {
    double t;
    Complex z;

    Complex operator()(const RadialPolynomial& f) const { return poly_profile_ds(f, std::norm(z)) * z; }
    Complex operator()(const RadialBump& f) const {
        return bump_profile_ds(f.amplitude, f.support_radius, std::norm(z)) * z;
    }
    Complex operator()(const MovingBump& f) const {
        const Complex w = z - orbit_center(f, t);
        return bump_profile_ds(f.amplitude, f.bump_radius, std::norm(w)) * w;
    }
    Complex operator()(const TimeScaled& f) const {
        return poly_eval(f.gain, t) * wirtinger_dzbar(*f.inner, 0.0, z);
    }
    Complex operator()(const Concatenation& f) const {
        if (t <= 0.5) {
            const double u = 2.0 * t;
            return 2.0 * concat_time_warp_rate(u) * wirtinger_dzbar(*f.first, concat_time_warp(u), z);
        }
        const double u = 2.0 * t - 1.0;
        return 2.0 * concat_time_warp_rate(u) * wirtinger_dzbar(*f.second, concat_time_warp(u), z);
    }
};

}  // namespace

HamiltonianSpec::HamiltonianSpec(Family family, double support_radius)
    : family_(std::move(family)), support_radius_(support_radius) {}

HamiltonianSpec HamiltonianSpec::radial_polynomial(double amplitude, int exponent, double support_radius) {
    if (!std::isfinite(amplitude)) throw std::invalid_argument("radial_polynomial: amplitude must be finite");
    if (exponent < 2) throw std::invalid_argument("radial_polynomial: exponent must be >= 2");
    if (!(support_radius > 0.0 && support_radius <= 1.0))
        throw std::invalid_argument("radial_polynomial: support radius must lie in (0, 1]");
    return HamiltonianSpec(RadialPolynomial{amplitude, exponent, support_radius}, support_radius);
}

HamiltonianSpec HamiltonianSpec::radial_bump(double amplitude, double support_radius) {
    if (!std::isfinite(amplitude)) throw std::invalid_argument("radial_bump: amplitude must be finite");
    if (!(support_radius > 0.0 && support_radius <= 1.0))
        throw std::invalid_argument("radial_bump: support radius must lie in (0, 1]");
    return HamiltonianSpec(RadialBump{amplitude, support_radius}, support_radius);
}

HamiltonianSpec HamiltonianSpec::moving_bump(double amplitude, double bump_radius, double orbit_radius) {
    if (!std::isfinite(amplitude)) throw std::invalid_argument("moving_bump: amplitude must be finite");
    if (!(bump_radius > 0.0)) throw std::invalid_argument("moving_bump: bump radius must be positive");
    if (!(orbit_radius >= 0.0)) throw std::invalid_argument("moving_bump: orbit radius must be >= 0");
    const double rho = orbit_radius + bump_radius;
    if (!(rho < 1.0)) throw std::invalid_argument("moving_bump: orbit radius + bump radius must be < 1");
    return HamiltonianSpec(MovingBump{amplitude, bump_radius, orbit_radius}, rho);
}

HamiltonianSpec HamiltonianSpec::time_scaled(std::vector<double> gain, HamiltonianSpec inner) {
    if (gain.empty()) throw std::invalid_argument("time_scaled: gain polynomial must be non-empty");
    for (double c : gain)
        if (!std::isfinite(c)) throw std::invalid_argument("time_scaled: gain coefficients must be finite");
    if (!inner.radial_autonomous())
        throw std::invalid_argument("time_scaled: inner Hamiltonian must be an autonomous radial entry");
    const double rho = inner.support_radius();
    return HamiltonianSpec(
        TimeScaled{std::move(gain), std::make_shared<const HamiltonianSpec>(std::move(inner))}, rho);
}

bool HamiltonianSpec::radial_autonomous() const {
    return std::holds_alternative<RadialPolynomial>(family_) || std::holds_alternative<RadialBump>(family_);
}

std::string HamiltonianSpec::family_name() const {
    struct Visitor {
        std::string operator()(const RadialPolynomial&) const { return "radial-polynomial"; }
        std::string operator()(const RadialBump&) const { return "radial-bump"; }
        std::string operator()(const MovingBump&) const { return "moving-bump"; }
        std::string operator()(const TimeScaled&) const { return "time-scaled"; }
        std::string operator()(const Concatenation&) const { return "concatenation"; }
    };
    return std::visit(Visitor{}, family_);
}

std::vector<double> HamiltonianSpec::time_breakpoints() const {
    if (const auto* c = std::get_if<Concatenation>(&family_)) {
        std::vector<double> points{0.5};
        for (double b : c->first->time_breakpoints())
            points.push_back(0.5 * concat_time_warp_inverse(b));
        for (double b : c->second->time_breakpoints())
            points.push_back(0.5 + 0.5 * concat_time_warp_inverse(b));
        std::sort(points.begin(), points.end());
        return points;
    }
    return {};
}

std::vector<EdgeCircle> HamiltonianSpec::edge_circles(double t) const {
    struct Visitor {
        double t;
        std::vector<EdgeCircle> operator()(const RadialPolynomial& f) const {
            return {{Complex(0.0, 0.0), f.support_radius}};
        }
        std::vector<EdgeCircle> operator()(const RadialBump& f) const {
            return {{Complex(0.0, 0.0), f.support_radius}};
        }
        std::vector<EdgeCircle> operator()(const MovingBump& f) const {
            return {{orbit_center(f, t), f.bump_radius}};
        }
        std::vector<EdgeCircle> operator()(const TimeScaled& f) const { return f.inner->edge_circles(0.0); }
        std::vector<EdgeCircle> operator()(const Concatenation& f) const {
            if (t <= 0.5) return f.first->edge_circles(concat_time_warp(2.0 * t));
            return f.second->edge_circles(concat_time_warp(2.0 * t - 1.0));
        }
    };
    return std::visit(Visitor{clamp_time(t)}, family_);
}

std::vector<double> HamiltonianSpec::radial_edge_breaks() const {
    struct Visitor {
        std::vector<double> operator()(const RadialPolynomial& f) const {
            return {f.support_radius * f.support_radius};
        }
        std::vector<double> operator()(const RadialBump& f) const {
            return {f.support_radius * f.support_radius};
        }
        std::vector<double> operator()(const MovingBump&) const { return {}; }
        std::vector<double> operator()(const TimeScaled& f) const { return f.inner->radial_edge_breaks(); }
        std::vector<double> operator()(const Concatenation& f) const {
            std::vector<double> breaks = f.first->radial_edge_breaks();
            std::vector<double> more = f.second->radial_edge_breaks();
            breaks.insert(breaks.end(), more.begin(), more.end());
            std::sort(breaks.begin(), breaks.end());
            return breaks;
        }
    };
    return std::visit(Visitor{}, family_);
}

double evaluate(const HamiltonianSpec& h, double t, Complex z) {
    return std::visit(EvalVisitor{clamp_time(t), z}, h.family());
}

Complex wirtinger_dzbar(const HamiltonianSpec& h, double t, Complex z) {
    return std::visit(DzbarVisitor{clamp_time(t), z}, h.family());
}

VelocityValue velocity(const HamiltonianSpec& h, double t, Complex z) {
    const Complex d = std::visit(DzbarVisitor{clamp_time(t), z}, h.family());
    // xi = 2i dH/dzbar
    return VelocityValue{Complex(-2.0 * d.imag(), 2.0 * d.real())};
}

HamiltonianSpec concatenate(const HamiltonianSpec& first, const HamiltonianSpec& second) {
    const double rho = std::max(first.support_radius(), second.support_radius());
    return HamiltonianSpec(Concatenation{std::make_shared<const HamiltonianSpec>(first),
                                         std::make_shared<const HamiltonianSpec>(second)},
                           rho);
}

// Seventh-degree smoothstep: rate 140 u^3 (1-u)^3 vanishes to third order at
// both junctions, which keeps a concatenated Hamiltonian C^2 in t even when
// the pieces do not vanish at their own endpoints.
double concat_time_warp(double u) {
    return u * u * u * u * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
}

double concat_time_warp_rate(double u) {
    const double a = u * (1.0 - u);
    return 140.0 * a * a * a;
}

double concat_time_warp_inverse(double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double u = v;
    for (int i = 0; i < 200; ++i) {
        const double f = concat_time_warp(u) - v;
        if (f > 0.0)
            hi = u;
        else
            lo = u;
        const double df = concat_time_warp_rate(u);
        double next = (df > 1e-8) ? u - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) < 1e-16) return next;
        u = next;
    }
    return u;
}

}  // namespace disclab
