#ifndef DISCLAB_REPORT_HPP
#define DISCLAB_REPORT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "disclab/calabi.hpp"
#include "disclab/linking.hpp"

namespace disclab {

/// Estimator settings for the Monte Carlo rotation number.
struct EstimatorSettings {
    long samples = 100000;
    std::uint64_t seed = 42;
    int workers = 0;  // 0: hardware concurrency
    double integrator_tolerance = 1e-10;
};

/// Sample sizes for the diagnostics experiment.
struct DiagnosticsSettings {
    long samples = 100000;
    int jacobian_points = 100;
};

/** A fully validated run configuration. Parsing is strict: unknown keys are
 * rejected, and every numeric setting is range-checked. */
struct RunConfig {
    explicit RunConfig(HamiltonianSpec h) : hamiltonian(std::move(h)) {}

    HamiltonianSpec hamiltonian;
    EstimatorSettings estimator{};
    DiagnosticsSettings diagnostics{};
    QuadratureOrders quadrature{};
    bool run_theorem = true;
    bool run_diagnostics = true;
    std::string report_path = "report.json";
    std::vector<std::array<double, 4>> plot_pairs{{0.5, 0.0, -0.5, 0.0}, {0.25, 0.1, 0.6, -0.2}};
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Canonical JSON form of a config (valid parser input; used as the echo).
nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json hamiltonian_to_json(const HamiltonianSpec& h);

/** Outcome of a run: the full report document, the exit code under the
 * contract (0 pass, 1 assertion failure, 3 numeric divergence), and the
 * per-sample windings kept for plot emission. */
struct RunOutput {
    nlohmann::json report;
    int exit_code = 0;
    bool all_passed = false;
    std::vector<double> windings;
};

RunOutput run_experiments(const RunConfig& config);

void write_report(const RunOutput& output, const std::string& path);

/// CSV plot artifacts: winding histogram, running mean of Phi, trajectory
/// traces for the configured pairs. Throws std::runtime_error on I/O failure.
void emit_plot_data(const RunConfig& config, const RunOutput& output, const std::string& outdir);

/// Entry point behind the command-line tool; returns the process exit code
/// (0 pass, 1 assertion failure, 2 usage error, 3 numeric divergence).
int cli_main(int argc, char** argv);

}  // namespace disclab

#endif
