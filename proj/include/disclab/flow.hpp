#ifndef DISCLAB_FLOW_HPP
#define DISCLAB_FLOW_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "disclab/hamiltonian.hpp"

namespace disclab {

/** Step policy for the RK4 integrator.
 *
 * fixed_steps == 0 selects adaptive stepping with step-doubling error
 * control at the given local tolerance; fixed_steps > 0 selects uniform
 * steps (used by Jacobian probes, where a shared step sequence makes the
 * integration error differentiable in the initial condition, and by
 * convergence studies). */
struct StepPolicy {
    double tolerance = 1e-10;
    double max_step = 1.0 / 128.0;  // keeps dense output well inside tolerance
    int fixed_steps = 0;
    int output_points = 257;  // uniform sample grid on [0, 1]
};

/** A time-sampled integral curve of the Hamiltonian flow phi_t.
 *
 * Stores the flow and its velocity on a fixed uniform grid; positions at
 * intermediate times come from cubic Hermite dense output. */
class Trajectory {
  public:
    Trajectory(std::vector<double> times, std::vector<ComplexPoint> points,
               std::vector<Complex> velocities, StepPolicy policy, long steps_taken);

    const std::vector<double>& times() const { return times_; }
    const std::vector<ComplexPoint>& points() const { return points_; }
    const std::vector<Complex>& velocities() const { return velocities_; }
    const StepPolicy& policy() const { return policy_; }
    long steps_taken() const { return steps_taken_; }

    ComplexPoint initial_point() const { return points_.front(); }
    ComplexPoint final_point() const { return points_.back(); }

    /// Dense output at any t in [0, 1].
    Complex position(double t) const;
    /// Dense output when the containing grid interval k is already known.
    Complex position_in_interval(std::size_t k, double t) const;

  private:
    std::vector<double> times_;
    std::vector<ComplexPoint> points_;
    std::vector<Complex> velocities_;
    StepPolicy policy_;
    long steps_taken_;
};

/// Numerical witnesses of flow quality.
struct FlowDiagnostics {
    double max_jacobian_deviation = 0.0;
    double max_radius_excess = 0.0;
    long step_count = 0;
};

/** Integrate the isotopy generated by h from z0 over [0, 1].
 * Initial points on or outside the support circle never move (the velocity
 * vanishes there identically), and the returned grid is exactly constant.
 * Throws FlowDivergedError if a point escapes the disc beyond the slack. */
Trajectory integrate(const HamiltonianSpec& h, ComplexPoint z0, const StepPolicy& policy = {});

/// Endpoint-only integration from t0 to t1 (no grid storage).
Complex flow_endpoint(const HamiltonianSpec& h, Complex z0, double t0, double t1,
                      const StepPolicy& policy = {});

/** det D phi_t(z0) by central differences of four auxiliary trajectories at
 * offset probe_offset, integrated with a shared fixed-step sequence (a shared
 * sequence makes the integration error differentiable in the initial
 * condition, so it cancels in the difference). The bump profiles carry third
 * flow derivatives of order 1e5; the default offset keeps the quadratic
 * truncation term near 1e-7. Requires |z0| < 1 - probe_offset. */
double jacobian_determinant(const HamiltonianSpec& h, ComplexPoint z0, double t,
                            double probe_offset = 1e-6, int fixed_steps = 4096);

using PairFunctional = std::function<double(Complex, Complex)>;

/// Monte Carlo estimates of a pair functional before and after pushing both
/// arguments forward by phi_t, on a shared sample stream.
struct InvarianceCheck {
    double before = 0.0;
    double after = 0.0;
    double sigma = 0.0;  // standard error of the paired difference
};

InvarianceCheck pushforward_invariance_check(const HamiltonianSpec& h, const PairFunctional& f,
                                             double t, long samples, std::uint64_t seed);

}  // namespace disclab

#endif
