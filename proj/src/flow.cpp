#include "disclab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disclab/errors.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline Complex field(const HamiltonianSpec& h, double t, Complex z) { return velocity(h, t, z).xi; }

inline Complex rk4_step(const HamiltonianSpec& h, double t, Complex z, double dt, Complex k1) {
    const Complex k2 = field(h, t + 0.5 * dt, z + (0.5 * dt) * k1);
    const Complex k3 = field(h, t + 0.5 * dt, z + (0.5 * dt) * k2);
    const Complex k4 = field(h, t + dt, z + dt * k3);
    return z + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

inline void check_contained(Complex z, double t) {
    if (!(std::norm(z) <= 1.0 + kContainmentSlack) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw FlowDivergedError("trajectory escaped the disc at t = " + std::to_string(t));
}

// Cubic Hermite interpolation of the state over [t0, t1] given endpoint
// values and derivatives. Exact at both endpoints (the basis coefficients
// vanish identically there).
inline Complex hermite(double t0, Complex y0, Complex f0, double t1, Complex y1, Complex f1, double t) {
    const double dt = t1 - t0;
    const double s = (t - t0) / dt;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y0 + (h10 * dt) * f0 + h01 * y1 + (h11 * dt) * f1;
}

// Segment times: integration restarts at the spec's time breakpoints so that
// every step sees a smooth field.
std::vector<double> segment_ends(const HamiltonianSpec& h, double t0, double t1) {
    std::vector<double> ends;
    for (double b : h.time_breakpoints())
        if (b > t0 + 1e-12 && b < t1 - 1e-12) ends.push_back(b);
    ends.push_back(t1);
    return ends;
}

// Advances z from t0 to t1, invoking on_step(ta, za, fa, tb, zb, fb) after
// every accepted internal step. Returns the endpoint.
template <class OnStep>
Complex advance(const HamiltonianSpec& h, Complex z, double t0, double t1, const StepPolicy& policy,
                long& steps, OnStep&& on_step) {
    if (t1 <= t0) return z;

    for (double target : segment_ends(h, t0, t1)) {
        if (policy.fixed_steps > 0) {
            const int n = std::max(1, static_cast<int>(std::lround(policy.fixed_steps *
                                                                   (target - t0) / (t1 - t0))));
            const double dt = (target - t0) / n;
            Complex f0 = field(h, t0, z);
            for (int i = 0; i < n; ++i) {
                const double ta = t0 + i * dt;
                const double tb = (i + 1 == n) ? target : t0 + (i + 1) * dt;
                const Complex znew = rk4_step(h, ta, z, tb - ta, f0);
                const Complex f1 = field(h, tb, znew);
                check_contained(znew, tb);
                on_step(ta, z, f0, tb, znew, f1);
                z = znew;
                f0 = f1;
                ++steps;
            }
            t0 = target;
            continue;
        }

        double t = t0;
        double dt = std::min(policy.max_step, target - t);
        Complex f0 = field(h, t, z);
        while (t < target) {
            bool last = false;
            if (dt >= target - t) {
                dt = target - t;
                last = true;
            }
            // Step-doubling: one full step against two half steps.
            const Complex full = rk4_step(h, t, z, dt, f0);
            const Complex mid = rk4_step(h, t, z, 0.5 * dt, f0);
            const Complex fm = field(h, t + 0.5 * dt, mid);
            const Complex fine = rk4_step(h, t + 0.5 * dt, mid, 0.5 * dt, fm);
            const double err = std::abs(fine - full) / 15.0;

            if (err <= policy.tolerance) {
                // local extrapolation: the doubled-step difference cancels the
                // leading error term, so the accepted value is well below the
                // estimate used for step control
                const Complex accepted = fine + (fine - full) / 15.0;
                const double tb = last ? target : t + dt;
                const Complex f1 = field(h, tb, accepted);
                check_contained(accepted, tb);
                on_step(t, z, f0, tb, accepted, f1);
                z = accepted;
                f0 = f1;
                t = tb;
                ++steps;
                const double grow = (err > 0.0) ? 0.9 * std::pow(policy.tolerance / err, 0.2) : 4.0;
                dt = std::min(policy.max_step, dt * std::min(4.0, std::max(0.5, grow)));
            } else {
                dt *= std::max(0.1, 0.9 * std::pow(policy.tolerance / err, 0.2));
            }
            if (dt < 1e-13)
                throw FlowDivergedError("step size underflow at t = " + std::to_string(t));
        }
        t0 = target;
    }
    return z;
}

}  // namespace

Trajectory::Trajectory(std::vector<double> times, std::vector<ComplexPoint> points,
                       std::vector<Complex> velocities, StepPolicy policy, long steps_taken)
    : times_(std::move(times)),
      points_(std::move(points)),
      velocities_(std::move(velocities)),
      policy_(policy),
      steps_taken_(steps_taken) {
    if (times_.size() < 2 || times_.size() != points_.size() || times_.size() != velocities_.size())
        throw std::invalid_argument("Trajectory: inconsistent grid sizes");
    if (times_.front() != 0.0 || times_.back() != 1.0)
        throw std::invalid_argument("Trajectory: time grid must span [0, 1]");
}

Complex Trajectory::position(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("Trajectory::position: t outside [0,1]");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = (it == times_.begin()) ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    if (k + 1 >= times_.size()) k = times_.size() - 2;
    return position_in_interval(k, t);
}

Complex Trajectory::position_in_interval(std::size_t k, double t) const {
    if (t == times_[k]) return points_[k].value();
    if (t == times_[k + 1]) return points_[k + 1].value();
    return hermite(times_[k], points_[k].value(), velocities_[k], times_[k + 1],
                   points_[k + 1].value(), velocities_[k + 1], t);
}

Trajectory integrate(const HamiltonianSpec& h, ComplexPoint z0, const StepPolicy& policy) {
    if (!DiscDomain{}.contains(z0))
        throw std::invalid_argument("integrate: initial point outside the disc");
    const int n = std::max(2, policy.output_points);
    std::vector<double> times(n);
    for (int i = 0; i < n; ++i) times[i] = static_cast<double>(i) / (n - 1);
    times.back() = 1.0;

    // Points on or outside the support circle never move; return the exact
    // constant grid (the velocity is identically zero along the curve).
    const double rho = h.support_radius();
    if (z0.abs2() >= rho * rho) {
        std::vector<ComplexPoint> points(n, z0);
        std::vector<Complex> velocities(n, Complex(0.0, 0.0));
        return Trajectory(std::move(times), std::move(points), std::move(velocities), policy, 0);
    }

    std::vector<ComplexPoint> points;
    points.reserve(n);
    points.push_back(z0);
    std::size_t next = 1;

    long steps = 0;
    advance(h, z0.value(), 0.0, 1.0, policy, steps,
            [&](double ta, Complex za, Complex fa, double tb, Complex zb, Complex fb) {
                while (next < times.size() && times[next] <= tb + 1e-15) {
                    const double t = std::min(times[next], tb);
                    points.push_back(ComplexPoint(t >= tb ? zb : hermite(ta, za, fa, tb, zb, fb, t)));
                    ++next;
                }
            });
    if (points.size() != times.size())
        throw FlowDivergedError("integration failed to reach t = 1");

    std::vector<Complex> velocities(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        velocities[i] = field(h, times[i], points[i].value());
    return Trajectory(std::move(times), std::move(points), std::move(velocities), policy, steps);
}

Complex flow_endpoint(const HamiltonianSpec& h, Complex z0, double t0, double t1,
                      const StepPolicy& policy) {
    const double rho = h.support_radius();
    if (std::norm(z0) >= rho * rho) return z0;
    long steps = 0;
    return advance(h, z0, t0, t1, policy, steps,
                   [](double, Complex, Complex, double, Complex, Complex) {});
}

double jacobian_determinant(const HamiltonianSpec& h, ComplexPoint z0, double t,
                            double probe_offset, int fixed_steps) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("jacobian_determinant: t outside [0,1]");
    if (!(z0.abs() < 1.0 - probe_offset))
        throw std::invalid_argument("jacobian_determinant: point too close to the boundary");
    if (t == 0.0) return 1.0;

    StepPolicy policy;
    policy.fixed_steps = std::max(1, static_cast<int>(std::lround(fixed_steps * t)));

    const Complex z = z0.value();
    const double d = probe_offset;
    const Complex xp = flow_endpoint(h, z + Complex(d, 0.0), 0.0, t, policy);
    const Complex xm = flow_endpoint(h, z - Complex(d, 0.0), 0.0, t, policy);
    const Complex yp = flow_endpoint(h, z + Complex(0.0, d), 0.0, t, policy);
    const Complex ym = flow_endpoint(h, z - Complex(0.0, d), 0.0, t, policy);

    const Complex cx = (xp - xm) / (2.0 * d);  // d phi / dx
    const Complex cy = (yp - ym) / (2.0 * d);  // d phi / dy
    return cx.real() * cy.imag() - cx.imag() * cy.real();
}

InvarianceCheck pushforward_invariance_check(const HamiltonianSpec& h, const PairFunctional& f,
                                             double t, long samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("pushforward_invariance_check: need >= 2 samples");
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("pushforward_invariance_check: t outside [0,1]");

    std::vector<double> before(samples), after(samples);
    const StepPolicy policy;
    for (long i = 0; i < samples; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        Complex z1 = sample_disc_uniform(rng).value();
        Complex z2 = sample_disc_uniform(rng).value();
        while (std::abs(z1 - z2) < kCollisionGuard) {
            z1 = sample_disc_uniform(rng).value();
            z2 = sample_disc_uniform(rng).value();
        }
        before[i] = f(z1, z2);
        after[i] = f(flow_endpoint(h, z1, 0.0, t, policy), flow_endpoint(h, z2, 0.0, t, policy));
    }

    const double mass = kPi * kPi;  // total mass of dm x dm
    double mean_before = 0.0, mean_after = 0.0;
    for (long i = 0; i < samples; ++i) {
        mean_before += before[i];
        mean_after += after[i];
    }
    mean_before /= samples;
    mean_after /= samples;

    double var_diff = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double d = (after[i] - before[i]) - (mean_after - mean_before);
        var_diff += d * d;
    }
    var_diff /= (samples - 1.0);

    InvarianceCheck out;
    out.before = mass * mean_before;
    out.after = mass * mean_after;
    out.sigma = mass * std::sqrt(var_diff / samples);
    return out;
}

}  // namespace disclab
