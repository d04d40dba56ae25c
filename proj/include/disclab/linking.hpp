#ifndef DISCLAB_LINKING_HPP
#define DISCLAB_LINKING_HPP

#include <cstdint>

#include "disclab/flow.hpp"

namespace disclab {

enum class WindingMethod { argument_tracking, integrand_quadrature };

/** Winding data of one pair curve t -> (phi_t(z1), phi_t(z2)).
 *
 * `winding` is the total continuous change of arg(z1(t) - z2(t)) in turns;
 * `line_integral` is the full complex integral of the pair form
 * (1/2pi) d(z1 - z2)/(z1 - z2) along the curve, whose imaginary part is the
 * winding and whose real part is (1/2pi) log |w(1)|/|w(0)|. */
struct PairWinding {
    double winding = 0.0;
    Complex line_integral{0.0, 0.0};
    WindingMethod method = WindingMethod::argument_tracking;
    long refinements = 0;  // dense-output subdivisions (argument tracking)
};

/** Winding by continuous-argument unwrapping along the shared grid. Steps
 * whose argument change exceeds pi/2 are subdivided by dense output (max
 * depth 40). Throws NearCollisionError when the separation falls below the
 * collision guard. */
PairWinding pair_winding_arg(const Trajectory& traj1, const Trajectory& traj2);

/** Winding by composite Gauss-Legendre quadrature in t of the velocity
 * difference quotient (xi(z1) - xi(z2)) / (z1 - z2) along the pair curve. */
PairWinding pair_winding_integrand(const HamiltonianSpec& h, const Trajectory& traj1,
                                   const Trajectory& traj2);

enum class RotationEstimator { monte_carlo, radial_quadrature, closed_form_radial };

/** An estimate of the average rotation number Phi, with the complex linking
 * integral Lambda carried alongside (Im Lambda == phi by construction for
 * the Monte Carlo estimator). */
struct RotationEstimate {
    double phi = 0.0;
    double std_error = 0.0;
    long samples = 0;
    RotationEstimator estimator = RotationEstimator::monte_carlo;
    Complex lambda{0.0, 0.0};
    double lambda_re_stderr = 0.0;
    double lambda_im_stderr = 0.0;
    long collision_redraws = 0;
    long skipped_samples = 0;
};

struct McSettings {
    long samples = 100000;
    std::uint64_t seed = 42;
    int workers = 0;  // 0: hardware concurrency
    StepPolicy step{};
};

/** Monte Carlo Phi over uniform pairs of D x D: pi^2 times the sample mean
 * of the pair winding. Exact collisions at draw time are redrawn and
 * counted; near-collisions along a trajectory skip the sample. Results are
 * bit-identical for a fixed seed regardless of the worker count (per-sample
 * substreams, fixed reduction order). Throws SamplingDegeneracyError when
 * more than 1% of samples get skipped. */
RotationEstimate average_rotation_mc(const HamiltonianSpec& h, const McSettings& settings,
                                     std::vector<double>* windings_out = nullptr);

/** Deterministic Phi for autonomous radial Hamiltonians:
 * Phi = -2 pi * integral_0^1 h(s) ds for H = h(|z|^2), by 1-D quadrature
 * split at the support edge. Throws std::domain_error for other families. */
RotationEstimate average_rotation_radial(const HamiltonianSpec& h, int radial_order = 128);

/// Both sides of the configuration-space symmetry reduction of the linking
/// integrand at fixed t, estimated on a shared sample stream.
struct SymmetryCheck {
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double pooled_sigma = 0.0;
};

SymmetryCheck symmetry_reduction_check(const HamiltonianSpec& h, double t, long samples,
                                       std::uint64_t seed);

}  // namespace disclab

#endif
