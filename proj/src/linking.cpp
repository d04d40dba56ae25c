#include "disclab/linking.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "disclab/errors.hpp"
#include "disclab/quadrature.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxSubdivisionDepth = 40;

void require_shared_grid(const Trajectory& a, const Trajectory& b) {
    if (a.times().size() != b.times().size() || a.times() != b.times())
        throw std::invalid_argument("pair winding: trajectories must share the time grid");
}

struct ArgAccumulator {
    const Trajectory& traj1;
    const Trajectory& traj2;
    long refinements = 0;

    Complex difference(std::size_t interval, double t) const {
        const Complex w = traj1.position_in_interval(interval, t) -
                          traj2.position_in_interval(interval, t);
        if (std::abs(w) < kCollisionGuard) throw NearCollisionError(t, std::abs(w));
        return w;
    }

    // Total argument change over [t0, t1]; splits until each piece turns by
    // less than pi/2, which pins the branch of the continuous argument.
    double delta_arg(std::size_t interval, double t0, Complex w0, double t1, Complex w1, int depth) {
        const double d = std::arg(w1 * std::conj(w0));
        if (std::abs(d) <= 0.5 * kPi) return d;
        if (depth >= kMaxSubdivisionDepth) throw NearCollisionError(t0, std::abs(w0));
        ++refinements;
        const double tm = 0.5 * (t0 + t1);
        const Complex wm = difference(interval, tm);
        return delta_arg(interval, t0, w0, tm, wm, depth + 1) +
               delta_arg(interval, tm, wm, t1, w1, depth + 1);
    }
};

}  // namespace

PairWinding pair_winding_arg(const Trajectory& traj1, const Trajectory& traj2) {
    require_shared_grid(traj1, traj2);
    const auto& times = traj1.times();

    ArgAccumulator acc{traj1, traj2};
    Complex w0 = traj1.points().front().value() - traj2.points().front().value();
    if (std::abs(w0) < kCollisionGuard) throw NearCollisionError(0.0, std::abs(w0));
    const Complex w_start = w0;

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const Complex w1 = traj1.points()[k + 1].value() - traj2.points()[k + 1].value();
        if (std::abs(w1) < kCollisionGuard) throw NearCollisionError(times[k + 1], std::abs(w1));
        total += acc.delta_arg(k, times[k], w0, times[k + 1], w1, 0);
        w0 = w1;
    }

    PairWinding out;
    out.winding = total / (2.0 * kPi);
    out.line_integral = Complex(std::log(std::abs(w0) / std::abs(w_start)) / (2.0 * kPi), out.winding);
    out.method = WindingMethod::argument_tracking;
    out.refinements = acc.refinements;
    return out;
}

PairWinding pair_winding_integrand(const HamiltonianSpec& h, const Trajectory& traj1,
                                   const Trajectory& traj2) {
    require_shared_grid(traj1, traj2);
    const auto& times = traj1.times();
    const Quad1D base = gauss_legendre(5, 0.0, 1.0);

    Complex integral(0.0, 0.0);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double ta = times[k];
        const double dt = times[k + 1] - ta;
        for (std::size_t j = 0; j < base.nodes.size(); ++j) {
            const double t = ta + base.nodes[j] * dt;
            const Complex p1 = traj1.position_in_interval(k, t);
            const Complex p2 = traj2.position_in_interval(k, t);
            const Complex w = p1 - p2;
            if (std::abs(w) < kCollisionGuard) throw NearCollisionError(t, std::abs(w));
            const Complex num = velocity(h, t, p1).xi - velocity(h, t, p2).xi;
            integral += (base.weights[j] * dt) * (num / w);
        }
    }

    PairWinding out;
    out.line_integral = integral / (2.0 * kPi);
    out.winding = out.line_integral.imag();
    out.method = WindingMethod::integrand_quadrature;
    return out;
}

RotationEstimate average_rotation_mc(const HamiltonianSpec& h, const McSettings& settings,
                                     std::vector<double>* windings_out) {
    const long n = settings.samples;
    if (n < 100) throw std::invalid_argument("average_rotation_mc: need at least 100 samples");

    std::vector<double> winding(n, 0.0), log_ratio(n, 0.0);
    std::vector<unsigned char> kept(n, 0);
    std::vector<unsigned int> redraws(n, 0);

    const auto run_range = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            RngStream rng(settings.seed, static_cast<std::uint64_t>(i));
            ComplexPoint z1 = sample_disc_uniform(rng);
            ComplexPoint z2 = sample_disc_uniform(rng);
            while (std::abs(z1.value() - z2.value()) < kCollisionGuard) {
                ++redraws[i];
                z1 = sample_disc_uniform(rng);
                z2 = sample_disc_uniform(rng);
            }
            try {
                const Trajectory t1 = integrate(h, z1, settings.step);
                const Trajectory t2 = integrate(h, z2, settings.step);
                const PairWinding pw = pair_winding_arg(t1, t2);
                winding[i] = pw.winding;
                log_ratio[i] = pw.line_integral.real();
                kept[i] = 1;
            } catch (const NearCollisionError&) {
                kept[i] = 0;  // reported through skipped_samples
            }
        }
    };

    int workers = settings.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers > 1) {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const long chunk = (n + workers - 1) / workers;
        for (int wi = 0; wi < workers; ++wi) {
            const long lo = wi * chunk;
            const long hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, wi, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    errors[wi] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        run_range(0, n);
    }

    long kept_count = 0, skip_count = 0, redraw_count = 0;
    for (long i = 0; i < n; ++i) {
        kept_count += kept[i];
        redraw_count += redraws[i];
    }
    skip_count = n - kept_count;
    if (skip_count > n / 100)
        throw SamplingDegeneracyError("more than 1% of pair samples skipped as near-collisions");

    // Fixed reduction order (ascending sample index) keeps results
    // bit-identical across worker counts.
    double sum_w = 0.0, sum_r = 0.0;
    for (long i = 0; i < n; ++i) {
        if (!kept[i]) continue;
        sum_w += winding[i];
        sum_r += log_ratio[i];
    }
    const double mean_w = sum_w / kept_count;
    const double mean_r = sum_r / kept_count;
    double var_w = 0.0, var_r = 0.0;
    for (long i = 0; i < n; ++i) {
        if (!kept[i]) continue;
        var_w += (winding[i] - mean_w) * (winding[i] - mean_w);
        var_r += (log_ratio[i] - mean_r) * (log_ratio[i] - mean_r);
    }
    var_w /= std::max(1L, kept_count - 1);
    var_r /= std::max(1L, kept_count - 1);

    const double mass = kPi * kPi;
    RotationEstimate est;
    est.phi = mass * mean_w;
    est.std_error = mass * std::sqrt(var_w / kept_count);
    est.samples = kept_count;
    est.estimator = RotationEstimator::monte_carlo;
    est.lambda = Complex(mass * mean_r, est.phi);
    est.lambda_re_stderr = mass * std::sqrt(var_r / kept_count);
    est.lambda_im_stderr = est.std_error;
    est.collision_redraws = redraw_count;
    est.skipped_samples = skip_count;

    if (windings_out) {
        windings_out->clear();
        windings_out->reserve(kept_count);
        for (long i = 0; i < n; ++i)
            if (kept[i]) windings_out->push_back(winding[i]);
    }
    return est;
}

RotationEstimate average_rotation_radial(const HamiltonianSpec& h, int radial_order) {
    if (!h.radial_autonomous())
        throw std::domain_error("average_rotation_radial: spec is not an autonomous radial entry");

    std::vector<double> breaks{0.0};
    for (double s : h.radial_edge_breaks())
        if (s > 1e-12 && s < 1.0 - 1e-12) breaks.push_back(s);
    breaks.push_back(1.0);
    const Quad1D rule = composite_gauss_legendre(radial_order, breaks);

    // Phi = -2 pi * integral_0^1 h(s) ds with h the profile in s = |z|^2.
    double integral = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        integral += rule.weights[j] * evaluate(h, 0.0, Complex(std::sqrt(rule.nodes[j]), 0.0));

    RotationEstimate est;
    est.phi = -2.0 * kPi * integral;
    est.estimator = RotationEstimator::radial_quadrature;
    est.lambda = Complex(0.0, est.phi);
    return est;
}

SymmetryCheck symmetry_reduction_check(const HamiltonianSpec& h, double t, long samples,
                                       std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("symmetry_reduction_check: need >= 2 samples");
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("symmetry_reduction_check: t outside [0,1]");

    std::vector<Complex> lhs(samples), rhs(samples);
    for (long i = 0; i < samples; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        Complex z1 = sample_disc_uniform(rng).value();
        Complex z2 = sample_disc_uniform(rng).value();
        while (std::abs(z1 - z2) < kCollisionGuard) {
            z1 = sample_disc_uniform(rng).value();
            z2 = sample_disc_uniform(rng).value();
        }
        const Complex xi1 = velocity(h, t, z1).xi;
        const Complex xi2 = velocity(h, t, z2).xi;
        const Complex denom = z1 - z2;
        lhs[i] = (xi1 - xi2) / denom;
        rhs[i] = 2.0 * xi1 / denom;
    }

    const double mass = kPi * kPi;
    Complex mean_lhs(0.0, 0.0), mean_rhs(0.0, 0.0);
    for (long i = 0; i < samples; ++i) {
        mean_lhs += lhs[i];
        mean_rhs += rhs[i];
    }
    mean_lhs /= static_cast<double>(samples);
    mean_rhs /= static_cast<double>(samples);

    double var = 0.0;
    const Complex mean_diff = mean_lhs - mean_rhs;
    for (long i = 0; i < samples; ++i) var += std::norm((lhs[i] - rhs[i]) - mean_diff);
    var /= (samples - 1.0);

    SymmetryCheck out;
    out.lhs = mass * mean_lhs;
    out.rhs = mass * mean_rhs;
    out.pooled_sigma = mass * std::sqrt(var / samples);
    return out;
}

}  // namespace disclab
