// run.hpp — configuration-driven scenario runner: dynamics, densities, sweeps,
// figure-data emission and run manifests.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qbath/model.hpp"

namespace qbath {

enum class Method { discrete, analytic, both };

// Parsed scenario description, in the input's absolute units.
// All computations run in Gamma = 1 units (times as Gamma*t, frequencies as
// (omega - omega_0)/Gamma); inputs are rescaled on load.
struct ScenarioConfig {
    PhysicalParams params;

    std::size_t n_modes{0}; // 0 selects a resolution-based default
    double half_span{0.0};  // 0 selects max(40 Gamma, 4 Omega_0)

    double t_end{0.0};
    double dt{0.0};              // 0 selects the integrator default
    std::size_t sample_every{0}; // 0 selects <= ~2000 snapshots

    std::string directory{"out"};
    std::vector<std::string> artifacts{"population", "concurrence"};
    Method method{Method::analytic};
    double cross_method_tol{1e-3};
};

// INI-style sections [physical], [bath], [time], [output]; '#' and ';' comments.
// Missing or malformed keys raise ConfigError with a "key: reason" message.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

// Set one physical/bath key on a copy (sweep axis support).
ScenarioConfig apply_axis_value(ScenarioConfig base, const std::string& axis, double value);

struct ManifestFile {
    std::string name;
    std::size_t rows{0};
};

struct RunManifest {
    std::string version;
    std::string config_echo; // resolved configuration, serialized
    std::vector<ManifestFile> files;
    double norm_drift{0.0};
    std::optional<double> cross_method_max_dev;
    double duration_seconds{0.0};
};

void write_manifest(const RunManifest& m, const std::string& path);

// Runs one scenario and writes the requested artifacts plus run_manifest.json
// into config.directory. Throws ConfigError / NumericalError on failure.
RunManifest run_scenario(const ScenarioConfig& config);

struct SweepPoint {
    double value{0.0};
    std::string directory;
    double c2_infinity{0.0};
    std::vector<double> peak_locations; // sorted by peak height, descending
};

// One subdirectory per axis value plus summary.csv; points run concurrently
// (QBATH worker count from RESERVOIR_WORKERS, default hardware concurrency).
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& axis,
                                  const std::vector<double>& values);

// Plot-ready CSV data for the four reference figures; `which` is fig1..fig4.
std::vector<ManifestFile> emit_figure_data(const std::string& which,
                                           const std::string& out_dir);

// Entry point shared by the CLI binary and the tests; returns the process exit code
// (0 success, 2 configuration error, 3 numerical-quality failure).
int cli_main(int argc, const char* const* argv);

} // namespace qbath
