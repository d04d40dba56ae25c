#ifndef DISCLAB_ERRORS_HPP
#define DISCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace disclab {

// A flow trajectory left the disc by more than the containment slack, or the
// stepper could not reach the requested local tolerance. Signals a bad
// Hamiltonian or step policy rather than a recoverable condition.
struct FlowDivergedError : std::runtime_error {
    explicit FlowDivergedError(const std::string& what) : std::runtime_error(what) {}
};

// A pair trajectory approached the diagonal below the collision guard; the
// winding of the pair cannot be resolved.
struct NearCollisionError : std::runtime_error {
    NearCollisionError(double time_, double separation_)
        : std::runtime_error("pair separation " + std::to_string(separation_) +
                             " below collision guard at t = " + std::to_string(time_)),
          time(time_),
          separation(separation_) {}
    double time;
    double separation;
};

// More than the admissible fraction of Monte Carlo samples had to be skipped.
struct SamplingDegeneracyError : std::runtime_error {
    explicit SamplingDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or unparseable run configuration (strict schema).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace disclab

#endif
