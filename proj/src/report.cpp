#include "disclab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "disclab/cauchy.hpp"
#include "disclab/errors.hpp"
#include "disclab/flow.hpp"

namespace disclab {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    require_object(j, where);
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

long get_integer(const json& j, const std::string& where, long lo, long hi) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ConfigError(where + ": expected an integer");
    const long v = j.get<long>();
    if (v < lo || v > hi)
        throw ConfigError(where + ": value " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

std::vector<double> get_number_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_number(v, where));
    return out;
}

HamiltonianSpec parse_hamiltonian(const json& j, const std::string& where) {
    require_object(j, where);
    if (!j.contains("name") || !j.at("name").is_string())
        throw ConfigError(where + ": missing family 'name'");
    const std::string name = j.at("name").get<std::string>();

    try {
        if (name == "radial-polynomial" || name == "radial-bump" || name == "moving-bump") {
            require_keys(j, {"name", "parameters"}, where);
            if (!j.contains("parameters")) throw ConfigError(where + ": missing 'parameters'");
            const std::vector<double> p = get_number_array(j.at("parameters"), where + ".parameters");
            if (name == "radial-polynomial") {
                if (p.size() != 3)
                    throw ConfigError(where +
                                      ": radial-polynomial takes [amplitude, exponent, support_radius]");
                if (p[1] != std::floor(p[1]))
                    throw ConfigError(where + ": radial-polynomial exponent must be an integer");
                return HamiltonianSpec::radial_polynomial(p[0], static_cast<int>(p[1]), p[2]);
            }
            if (name == "radial-bump") {
                if (p.size() != 2)
                    throw ConfigError(where + ": radial-bump takes [amplitude, support_radius]");
                return HamiltonianSpec::radial_bump(p[0], p[1]);
            }
            if (p.size() != 3)
                throw ConfigError(where + ": moving-bump takes [amplitude, bump_radius, orbit_radius]");
            return HamiltonianSpec::moving_bump(p[0], p[1], p[2]);
        }
        if (name == "time-scaled") {
            require_keys(j, {"name", "g", "inner"}, where);
            if (!j.contains("g") || !j.contains("inner"))
                throw ConfigError(where + ": time-scaled needs 'g' coefficients and 'inner'");
            return HamiltonianSpec::time_scaled(get_number_array(j.at("g"), where + ".g"),
                                                parse_hamiltonian(j.at("inner"), where + ".inner"));
        }
        if (name == "concatenation") {
            require_keys(j, {"name", "first", "second"}, where);
            if (!j.contains("first") || !j.contains("second"))
                throw ConfigError(where + ": concatenation needs 'first' and 'second'");
            return concatenate(parse_hamiltonian(j.at("first"), where + ".first"),
                               parse_hamiltonian(j.at("second"), where + ".second"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": unknown Hamiltonian family '" + name + "'");
}

}  // namespace

RunConfig parse_config(const json& j) {
    require_keys(j,
                 {"hamiltonian", "estimator", "diagnostics", "quadrature", "experiments", "output",
                  "plot_pairs"},
                 "config");
    if (!j.contains("hamiltonian")) throw ConfigError("config: missing 'hamiltonian'");

    RunConfig config(parse_hamiltonian(j.at("hamiltonian"), "config.hamiltonian"));

    if (j.contains("estimator")) {
        const json& e = j.at("estimator");
        require_keys(e, {"samples", "seed", "workers", "integrator_tolerance"}, "config.estimator");
        if (e.contains("samples"))
            config.estimator.samples =
                get_integer(e.at("samples"), "config.estimator.samples", 100, 2000000000L);
        if (e.contains("seed")) {
            if (!e.at("seed").is_number_integer() && !e.at("seed").is_number_unsigned())
                throw ConfigError("config.estimator.seed: expected an integer");
            config.estimator.seed = e.at("seed").get<std::uint64_t>();
        }
        if (e.contains("workers"))
            config.estimator.workers =
                static_cast<int>(get_integer(e.at("workers"), "config.estimator.workers", 0, 1024));
        if (e.contains("integrator_tolerance")) {
            const double tol =
                get_number(e.at("integrator_tolerance"), "config.estimator.integrator_tolerance");
            if (!(tol >= 1e-14 && tol <= 1e-2))
                throw ConfigError("config.estimator.integrator_tolerance: outside [1e-14, 1e-2]");
            config.estimator.integrator_tolerance = tol;
        }
    }
    if (j.contains("diagnostics")) {
        const json& d = j.at("diagnostics");
        require_keys(d, {"samples", "jacobian_points"}, "config.diagnostics");
        if (d.contains("samples"))
            config.diagnostics.samples =
                get_integer(d.at("samples"), "config.diagnostics.samples", 100, 100000000L);
        if (d.contains("jacobian_points"))
            config.diagnostics.jacobian_points = static_cast<int>(
                get_integer(d.at("jacobian_points"), "config.diagnostics.jacobian_points", 1, 100000));
    }
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        require_keys(q, {"radial", "angular", "time"}, "config.quadrature");
        if (q.contains("radial"))
            config.quadrature.radial =
                static_cast<int>(get_integer(q.at("radial"), "config.quadrature.radial", 1, 4096));
        if (q.contains("angular"))
            config.quadrature.angular =
                static_cast<int>(get_integer(q.at("angular"), "config.quadrature.angular", 1, 4096));
        if (q.contains("time"))
            config.quadrature.time =
                static_cast<int>(get_integer(q.at("time"), "config.quadrature.time", 1, 4096));
    }
    if (j.contains("experiments")) {
        const json& ex = j.at("experiments");
        if (!ex.is_array()) throw ConfigError("config.experiments: expected an array");
        config.run_theorem = false;
        config.run_diagnostics = false;
        for (const auto& item : ex) {
            if (!item.is_string()) throw ConfigError("config.experiments: entries must be strings");
            const std::string s = item.get<std::string>();
            if (s == "theorem-check")
                config.run_theorem = true;
            else if (s == "diagnostics")
                config.run_diagnostics = true;
            else if (s == "all") {
                config.run_theorem = true;
                config.run_diagnostics = true;
            } else
                throw ConfigError("config.experiments: unknown experiment '" + s + "'");
        }
        if (!config.run_theorem && !config.run_diagnostics)
            throw ConfigError("config.experiments: empty experiment list");
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_keys(o, {"report"}, "config.output");
        if (o.contains("report")) {
            if (!o.at("report").is_string()) throw ConfigError("config.output.report: expected a string");
            config.report_path = o.at("report").get<std::string>();
        }
    }
    if (j.contains("plot_pairs")) {
        const json& pp = j.at("plot_pairs");
        if (!pp.is_array()) throw ConfigError("config.plot_pairs: expected an array of [x1,y1,x2,y2]");
        config.plot_pairs.clear();
        for (const auto& item : pp) {
            const std::vector<double> v = get_number_array(item, "config.plot_pairs");
            if (v.size() != 4) throw ConfigError("config.plot_pairs: each entry takes 4 numbers");
            try {
                const PairConfiguration pair{ComplexPoint(v[0], v[1]), ComplexPoint(v[2], v[3])};
                if (!DiscDomain{}.contains(pair.z1) || !DiscDomain{}.contains(pair.z2))
                    throw ConfigError("config.plot_pairs: points must lie in the disc");
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config.plot_pairs: ") + e.what());
            }
            config.plot_pairs.push_back({v[0], v[1], v[2], v[3]});
        }
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json hamiltonian_to_json(const HamiltonianSpec& h) {
    struct Visitor {
        json operator()(const RadialPolynomial& f) const {
            return {{"name", "radial-polynomial"},
                    {"parameters", {f.amplitude, f.exponent, f.support_radius}}};
        }
        json operator()(const RadialBump& f) const {
            return {{"name", "radial-bump"}, {"parameters", {f.amplitude, f.support_radius}}};
        }
        json operator()(const MovingBump& f) const {
            return {{"name", "moving-bump"},
                    {"parameters", {f.amplitude, f.bump_radius, f.orbit_radius}}};
        }
        json operator()(const TimeScaled& f) const {
            return {{"name", "time-scaled"}, {"g", f.gain}, {"inner", hamiltonian_to_json(*f.inner)}};
        }
        json operator()(const Concatenation& f) const {
            return {{"name", "concatenation"},
                    {"first", hamiltonian_to_json(*f.first)},
                    {"second", hamiltonian_to_json(*f.second)}};
        }
    };
    return std::visit(Visitor{}, h.family());
}

json config_to_json(const RunConfig& config) {
    json experiments = json::array();
    if (config.run_theorem) experiments.push_back("theorem-check");
    if (config.run_diagnostics) experiments.push_back("diagnostics");
    json pairs = json::array();
    for (const auto& p : config.plot_pairs) pairs.push_back({p[0], p[1], p[2], p[3]});
    return {
        {"hamiltonian", hamiltonian_to_json(config.hamiltonian)},
        {"estimator",
         {{"samples", config.estimator.samples},
          {"seed", config.estimator.seed},
          {"workers", config.estimator.workers},
          {"integrator_tolerance", config.estimator.integrator_tolerance}}},
        {"diagnostics",
         {{"samples", config.diagnostics.samples},
          {"jacobian_points", config.diagnostics.jacobian_points}}},
        {"quadrature",
         {{"radial", config.quadrature.radial},
          {"angular", config.quadrature.angular},
          {"time", config.quadrature.time}}},
        {"experiments", experiments},
        {"output", {{"report", config.report_path}}},
        {"plot_pairs", pairs},
    };
}

namespace {

struct AssertionLog {
    json entries = json::array();
    bool all_passed = true;

    void record(const std::string& name, bool pass, json detail) {
        detail["name"] = name;
        detail["pass"] = pass;
        entries.push_back(std::move(detail));
        if (!pass) all_passed = false;
    }
};

void run_theorem_experiment(const RunConfig& config, json& results, AssertionLog& log,
                            std::vector<double>* windings) {
    const HamiltonianSpec& h = config.hamiltonian;

    const CalabiResult cal = calabi(h, config.quadrature);
    results["cal"] = {{"value", cal.value}, {"est_error", cal.est_error}};

    McSettings settings;
    settings.samples = config.estimator.samples;
    settings.seed = config.estimator.seed;
    settings.workers = config.estimator.workers;
    settings.step.tolerance = config.estimator.integrator_tolerance;
    const RotationEstimate mc = average_rotation_mc(h, settings, windings);

    results["phi"] = {{"value", mc.phi},
                      {"std_error", mc.std_error},
                      {"samples", mc.samples},
                      {"collision_redraws", mc.collision_redraws},
                      {"skipped_samples", mc.skipped_samples}};
    results["lambda"] = {{"re", mc.lambda.real()},
                         {"im", mc.lambda.imag()},
                         {"re_stderr", mc.lambda_re_stderr},
                         {"im_stderr", mc.lambda_im_stderr}};

    const double residual = std::abs(mc.phi + 2.0 * cal.value);
    json relative;
    if (residual == 0.0)
        relative = 0.0;
    else if (cal.value != 0.0)
        relative = residual / std::abs(cal.value);
    results["residual"] = {{"absolute", residual}, {"relative", relative}};

    log.record("theorem.phi_plus_2cal_within_3sigma",
               residual <= 3.0 * mc.std_error + 2.0 * cal.est_error,
               {{"residual", residual}, {"three_sigma", 3.0 * mc.std_error}});
    log.record("theorem.lambda_re_within_3sigma",
               std::abs(mc.lambda.real()) <= 3.0 * mc.lambda_re_stderr,
               {{"lambda_re", mc.lambda.real()}, {"three_sigma", 3.0 * mc.lambda_re_stderr}});
    log.record("theorem.lambda_im_equals_phi", mc.lambda.imag() == mc.phi,
               {{"lambda_im", mc.lambda.imag()}, {"phi", mc.phi}});

    if (h.radial_autonomous()) {
        const RotationEstimate rq = average_rotation_radial(h, std::max(128, config.quadrature.radial));
        results["phi_radial_quadrature"] = rq.phi;
        const double closed_residual = std::abs(rq.phi + 2.0 * cal.value);
        log.record("theorem.radial_quadrature_matches_minus_2cal",
                   closed_residual <= std::max(1e-9, 4.0 * cal.est_error),
                   {{"residual", closed_residual}});
        log.record("theorem.mc_within_3sigma_of_radial_quadrature",
                   std::abs(mc.phi - rq.phi) <= 3.0 * mc.std_error,
                   {{"difference", std::abs(mc.phi - rq.phi)}, {"three_sigma", 3.0 * mc.std_error}});
    }
}

void run_diagnostics_experiment(const RunConfig& config, json& diagnostics, AssertionLog& log) {
    const HamiltonianSpec& h = config.hamiltonian;
    const std::uint64_t seed = config.estimator.seed;
    const long samples = config.diagnostics.samples;

    {
        RngStream rng(derive_seed(seed, 1));
        double max_dev = 0.0;
        for (int i = 0; i < config.diagnostics.jacobian_points; ++i) {
            const Complex z = 0.97 * sample_disc_uniform(rng).value();
            const double t = rng.next_double();
            max_dev = std::max(max_dev, std::abs(jacobian_determinant(h, ComplexPoint(z), t) - 1.0));
        }
        diagnostics["jacobian"] = {{"points", config.diagnostics.jacobian_points},
                                   {"max_deviation", max_dev}};
        log.record("diagnostics.jacobian_within_1e-6", max_dev <= 1e-6, {{"max_deviation", max_dev}});
    }

    {
        json checks = json::array();
        bool pass = true;
        int index = 0;
        for (double t : {0.0, 0.5, 1.0}) {
            const Lemma1Check c = lemma1_bound_check(h, t, samples, derive_seed(seed, 20 + index++));
            checks.push_back(
                {{"t", t}, {"estimate", c.estimate}, {"sigma", c.sigma}, {"majorant", c.majorant}});
            if (!(c.estimate <= c.majorant + 3.0 * c.sigma)) pass = false;
        }
        diagnostics["lemma1"] = checks;
        log.record("diagnostics.lemma1_bound", pass, {{"checks", checks}});
    }

    {
        json checks = json::array();
        bool pass = true;
        int index = 0;
        for (double t : {0.0, 0.5}) {
            const SymmetryCheck c =
                symmetry_reduction_check(h, t, samples, derive_seed(seed, 30 + index++));
            checks.push_back({{"t", t},
                              {"lhs_re", c.lhs.real()},
                              {"lhs_im", c.lhs.imag()},
                              {"rhs_re", c.rhs.real()},
                              {"rhs_im", c.rhs.imag()},
                              {"pooled_sigma", c.pooled_sigma}});
            if (!(std::abs(c.lhs - c.rhs) <= 3.0 * c.pooled_sigma)) pass = false;
        }
        diagnostics["symmetry_reduction"] = checks;
        log.record("diagnostics.symmetry_reduction_within_3sigma", pass, {{"checks", checks}});
    }

    {
        const long n = std::min<long>(samples, 20000);
        const InvarianceCheck c = pushforward_invariance_check(
            h, [](Complex a, Complex b) { return (a * std::conj(b)).real(); }, 1.0, n,
            derive_seed(seed, 4));
        diagnostics["pushforward"] = {
            {"samples", n}, {"before", c.before}, {"after", c.after}, {"sigma", c.sigma}};
        log.record("diagnostics.pushforward_invariance_within_3sigma",
                   std::abs(c.after - c.before) <= 3.0 * c.sigma,
                   {{"difference", std::abs(c.after - c.before)}, {"three_sigma", 3.0 * c.sigma}});
    }

    {
        const std::vector<SmoothFunctionSpec> functions = {
            SmoothFunctionSpec::holomorphic_polynomial(
                {Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)}),
            SmoothFunctionSpec::antiholomorphic_polynomial({Complex(0.0, 0.0), Complex(1.0, 0.0)}),
            SmoothFunctionSpec::hamiltonian_at(h, 0.25),
        };
        RngStream rng(derive_seed(seed, 6));
        double max_err = 0.0, max_holo_area = 0.0, max_boundary = 0.0;
        for (int i = 0; i < 20; ++i) {
            const ComplexPoint w(0.9 * sample_disc_uniform(rng).value());
            for (std::size_t k = 0; k < functions.size(); ++k) {
                const CauchyPompeiuResult r = cauchy_pompeiu(functions[k], w, config.quadrature);
                const Complex expected = functions[k].eval(w.value());
                max_err =
                    std::max(max_err, std::abs(r.reconstructed - expected) / (1.0 + std::abs(expected)));
                if (k == 0) max_holo_area = std::max(max_holo_area, std::abs(r.area_term));
                if (k == 2) max_boundary = std::max(max_boundary, std::abs(r.boundary_term));
            }
        }
        const CauchyCalabiCheck identity = cauchy_calabi_identity(h, 0.3, config.quadrature);
        const double identity_residual =
            std::abs(identity.lhs - identity.rhs) / (1.0 + std::abs(identity.rhs));

        diagnostics["cauchy"] = {{"max_reconstruction_error", max_err},
                                 {"max_holomorphic_area_term", max_holo_area},
                                 {"max_hamiltonian_boundary_term", max_boundary},
                                 {"identity_lhs_re", identity.lhs.real()},
                                 {"identity_lhs_im", identity.lhs.imag()},
                                 {"identity_rhs", identity.rhs},
                                 {"identity_residual", identity_residual}};
        log.record("diagnostics.cauchy_reconstruction_within_1e-6", max_err <= 1e-6,
                   {{"max_error", max_err}});
        log.record("diagnostics.cauchy_holomorphic_area_within_1e-10", max_holo_area <= 1e-10,
                   {{"max_area", max_holo_area}});
        if (h.support_radius() < 1.0)
            log.record("diagnostics.cauchy_boundary_term_exact_zero", max_boundary == 0.0,
                       {{"max_boundary", max_boundary}});
        log.record("diagnostics.cauchy_calabi_identity_within_1e-6", identity_residual <= 1e-6,
                   {{"residual", identity_residual}});
        log.record("diagnostics.cauchy_calabi_identity_imaginary_within_1e-8",
                   std::abs(identity.lhs.imag()) <= 1e-8, {{"lhs_im", identity.lhs.imag()}});
    }

    {
        const double center = singular_mass(ComplexPoint(0.0, 0.0));
        RngStream rng(derive_seed(seed, 5));
        double max_mass = 0.0;
        for (int i = 0; i < 100; ++i)
            max_mass = std::max(max_mass, singular_mass(sample_disc_uniform(rng)));
        diagnostics["singular_mass"] = {{"center", center}, {"max_sampled", max_mass}};
        log.record("diagnostics.singular_mass_center_2pi", std::abs(center - 2.0 * kPi) <= 1e-8,
                   {{"center", center}});
        log.record("diagnostics.singular_mass_bounded_4pi", max_mass <= 4.0 * kPi,
                   {{"max_sampled", max_mass}});
    }
}

}  // namespace

RunOutput run_experiments(const RunConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();

    RunOutput out;
    json& rep = out.report;
    rep["schema"] = "disclab-report-v1";
    rep["config"] = config_to_json(config);

    json results = json::object();
    json diagnostics = json::object();
    AssertionLog log;
    std::string error;

    try {
        if (config.run_theorem) run_theorem_experiment(config, results, log, &out.windings);
        if (config.run_diagnostics) run_diagnostics_experiment(config, diagnostics, log);
    } catch (const FlowDivergedError& e) {
        error = e.what();
    } catch (const SamplingDegeneracyError& e) {
        error = e.what();
    }

    rep["results"] = results;
    rep["diagnostics"] = diagnostics;
    rep["assertions"] = log.entries;
    rep["status"] = {{"all_passed", log.all_passed && error.empty()},
                     {"error", error.empty() ? json() : json(error)}};
    rep["provenance"] = {
        {"root_seed", config.estimator.seed},
        {"streams",
         {{"phi_samples", "RngStream(root_seed, sample_index)"},
          {"jacobian", derive_seed(config.estimator.seed, 1)},
          {"pushforward", derive_seed(config.estimator.seed, 4)},
          {"singular_mass", derive_seed(config.estimator.seed, 5)},
          {"cauchy_points", derive_seed(config.estimator.seed, 6)},
          {"lemma1",
           {derive_seed(config.estimator.seed, 20), derive_seed(config.estimator.seed, 21),
            derive_seed(config.estimator.seed, 22)}},
          {"symmetry",
           {derive_seed(config.estimator.seed, 30), derive_seed(config.estimator.seed, 31)}}}}};
    rep["timing"] = {
        {"wall_seconds",
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count()}};

    out.all_passed = log.all_passed && error.empty();
    out.exit_code = !error.empty() ? 3 : (log.all_passed ? 0 : 1);
    return out;
}

void write_report(const RunOutput& output, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
    out << output.report.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing report to '" + path + "'");
}

void emit_plot_data(const RunConfig& config, const RunOutput& output, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);

    const auto open = [&](const std::string& name) {
        std::ofstream f(fs::path(outdir) / name);
        if (!f) throw std::runtime_error("cannot write plot file '" + name + "' in '" + outdir + "'");
        return f;
    };
    char line[256];

    // (a) histogram of per-sample pair windings
    {
        const std::vector<double>& w = output.windings;
        if (w.empty()) throw std::runtime_error("no winding samples available for plotting");
        std::ofstream f = open("windings_histogram.csv");
        f << "bin_lo,bin_hi,count\n";
        const auto [mn_it, mx_it] = std::minmax_element(w.begin(), w.end());
        const double mn = *mn_it, mx = *mx_it;
        if (mn == mx) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%zu\n", mn, mx, w.size());
            f << line;
        } else {
            const int bins = 200;
            std::vector<std::size_t> count(bins, 0);
            for (double v : w) {
                int b = static_cast<int>((v - mn) / (mx - mn) * bins);
                if (b >= bins) b = bins - 1;
                if (b < 0) b = 0;
                ++count[b];
            }
            for (int b = 0; b < bins; ++b) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%zu\n", mn + (mx - mn) * b / bins,
                              mn + (mx - mn) * (b + 1) / bins, count[b]);
                f << line;
            }
        }
    }

    // (b) running mean of Phi versus sample count; the final row reproduces
    // the reported estimate exactly (same summation order)
    {
        std::ofstream f = open("phi_running_mean.csv");
        f << "samples,phi_running\n";
        const std::vector<double>& w = output.windings;
        const std::size_t stride = std::max<std::size_t>(1, w.size() / 1000);
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sum += w[i];
            if ((i + 1) % stride == 0 || i + 1 == w.size()) {
                std::snprintf(line, sizeof line, "%zu,%.17g\n", i + 1,
                              kPi * kPi * sum / static_cast<double>(i + 1));
                f << line;
            }
        }
    }

    // (c) trajectory traces for the configured pairs
    {
        std::ofstream f = open("trajectories.csv");
        f << "pair,t,z1_re,z1_im,z2_re,z2_im,r1,r2\n";
        StepPolicy policy;
        policy.tolerance = config.estimator.integrator_tolerance;
        long index = 0;
        for (const auto& p : config.plot_pairs) {
            const Trajectory t1 = integrate(config.hamiltonian, ComplexPoint(p[0], p[1]), policy);
            const Trajectory t2 = integrate(config.hamiltonian, ComplexPoint(p[2], p[3]), policy);
            for (std::size_t k = 0; k < t1.times().size(); ++k) {
                const ComplexPoint a = t1.points()[k];
                const ComplexPoint b = t2.points()[k];
                std::snprintf(line, sizeof line, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                              index, t1.times()[k], a.re, a.im, b.re, b.im, a.abs(), b.abs());
                f << line;
            }
            ++index;
        }
    }
}

namespace {

void apply_overrides(RunConfig& config, long samples, long long seed, int workers) {
    if (samples >= 0) {
        if (samples < 100) throw ConfigError("--samples: need at least 100");
        config.estimator.samples = samples;
    }
    if (seed >= 0) config.estimator.seed = static_cast<std::uint64_t>(seed);
    if (workers >= 0) config.estimator.workers = workers;
}

void print_summary(const RunOutput& out) {
    const json& rep = out.report;
    if (rep.contains("results") && rep["results"].contains("cal")) {
        const json& r = rep["results"];
        std::printf("cal               = %.12g  (quadrature error %.3g)\n",
                    r["cal"]["value"].get<double>(), r["cal"]["est_error"].get<double>());
        std::printf("phi (monte carlo) = %.12g  +- %.3g   (samples %ld, redraws %ld, skips %ld)\n",
                    r["phi"]["value"].get<double>(), r["phi"]["std_error"].get<double>(),
                    r["phi"]["samples"].get<long>(), r["phi"]["collision_redraws"].get<long>(),
                    r["phi"]["skipped_samples"].get<long>());
        if (r.contains("phi_radial_quadrature"))
            std::printf("phi (radial quad) = %.12g\n", r["phi_radial_quadrature"].get<double>());
        std::printf("lambda            = %.12g + %.12g i\n", r["lambda"]["re"].get<double>(),
                    r["lambda"]["im"].get<double>());
        std::printf("|phi + 2 cal|     = %.6g", r["residual"]["absolute"].get<double>());
        if (r["residual"]["relative"].is_number())
            std::printf("   (relative %.6g)", r["residual"]["relative"].get<double>());
        std::printf("\n");
    }
    int passed = 0, total = 0;
    for (const auto& a : rep["assertions"]) {
        ++total;
        if (a["pass"].get<bool>()) ++passed;
    }
    std::printf("assertions: %d/%d passed\n", passed, total);
    if (!rep["status"]["error"].is_null())
        std::printf("error: %s\n", rep["status"]["error"].get<std::string>().c_str());
}

void print_assertions(const RunOutput& out) {
    for (const auto& a : out.report["assertions"]) {
        if (a["pass"].get<bool>()) {
            std::printf("PASS %s\n", a["name"].get<std::string>().c_str());
        } else {
            json detail = a;
            detail.erase("name");
            detail.erase("pass");
            std::printf("FAIL %s %s\n", a["name"].get<std::string>().c_str(), detail.dump().c_str());
        }
    }
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"disclab: rotation-number and Calabi-invariant experiments on the unit disc"};
    app.require_subcommand(1);

    std::string config_path, report_path, outdir;
    long samples = -1;
    long long seed = -1;
    int workers = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "run configured experiments and write a report");
    run_cmd->add_option("config", config_path, "JSON config file")->required();
    CLI::App* check_cmd = app.add_subcommand("check", "run assertions only (terse output)");
    check_cmd->add_option("config", config_path, "JSON config file")->required();
    for (CLI::App* cmd : {run_cmd, check_cmd}) {
        cmd->add_option("--seed", seed, "override estimator seed");
        cmd->add_option("--samples", samples, "override estimator sample count");
        cmd->add_option("--workers", workers, "override worker count (0 = auto)");
    }
    CLI::App* plot_cmd = app.add_subcommand("plot", "emit CSV plot data from a report");
    plot_cmd->add_option("report", report_path, "report JSON produced by run")->required();
    plot_cmd->add_option("outdir", outdir, "output directory for CSV files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed() || check_cmd->parsed()) {
            RunConfig config = load_config(config_path);
            apply_overrides(config, samples, seed, workers);
            const RunOutput out = run_experiments(config);
            if (run_cmd->parsed()) {
                write_report(out, config.report_path);
                print_summary(out);
                std::printf("report written: %s\n", config.report_path.c_str());
            } else {
                print_assertions(out);
            }
            return out.exit_code;
        }

        // plot: rebuild the config from the report echo and recompute; the
        // deterministic estimator regenerates the exact per-sample windings
        std::ifstream in(report_path);
        if (!in) {
            std::fprintf(stderr, "cannot open report '%s'\n", report_path.c_str());
            return 2;
        }
        json rep;
        try {
            in >> rep;
        } catch (const json::parse_error& e) {
            std::fprintf(stderr, "report parse error: %s\n", e.what());
            return 2;
        }
        if (!rep.contains("config")) {
            std::fprintf(stderr, "report has no config echo\n");
            return 2;
        }
        RunConfig config = parse_config(rep["config"]);
        config.run_diagnostics = false;
        config.run_theorem = true;
        const RunOutput out = run_experiments(config);
        emit_plot_data(config, out, outdir);
        std::printf("plot data written to %s\n", outdir.c_str());
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const FlowDivergedError& e) {
        std::fprintf(stderr, "numeric divergence: %s\n", e.what());
        return 3;
    } catch (const SamplingDegeneracyError& e) {
        std::fprintf(stderr, "numeric divergence: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace disclab
