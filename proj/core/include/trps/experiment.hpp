#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trps/bench.hpp"
#include "trps/operators.hpp"
#include "trps/three_cavity.hpp"
#include "trps/time_grid.hpp"

namespace trps {

enum class OutputFormat { Csv, Json };

enum class SpectrumMethod { Sensor, Analytic, Both };

/// Observed operator: a bare lowering operator named by label, or a real
/// linear combination of them.
struct ObservableSpec {
    std::string label;                     // "sigma", "a", "b", "c", or custom
    std::map<std::string, double> coeffs;  // empty -> label names a bare mode

    Operator build() const;  // 5-dimensional system operator
};

/// Detuning schedule plus an optional symbolic switch time that is
/// resolved against a reference run ("first-valley" / "first-peak").
struct ScheduleSpec {
    DetuningSchedule schedule;
    std::string switch_phase;  // empty once resolved
};

struct SpectrumSpec {
    SpectrumMethod method = SpectrumMethod::Sensor;
    std::vector<double> delta_s = {50.0};  // one TRPS map per resolution (GHz)
    double omega_min = -700.0;             // GHz relative to omega0
    double omega_max = 700.0;
    double omega_step = 0.0;               // 0 -> 2 GHz when delta_s < 10, else 5 GHz
    double epsilon = 1e-3;                 // sensor-system coupling (GHz)
    int output_stride = 8;                 // spectrum rows every this many steps
};

struct ScanSpec {
    std::string parameter;  // "g" | "delta" | "t_switch"
    std::vector<double> values;
};

struct GridSpec {
    double t0 = 0.0;
    double t1 = 0.5;     // ns
    double dt = 0.0;     // ns; 0 -> min(2*pi/omega_max, 1/rate_max)/50
    int output_stride = 8;  // time-series rows every this many steps
};

struct ExperimentConfig {
    std::string preset = "custom";
    ModelParams model;
    ScheduleSpec schedule;
    std::string initial_state = "e000";
    std::vector<ObservableSpec> observables;  // empty -> sigma, a, b, c
    std::optional<SpectrumSpec> spectrum;
    std::optional<ScanSpec> scan;
    std::optional<ScalingSuiteConfig> bench;
    GridSpec grid;
    OutputFormat format = OutputFormat::Csv;
    std::string output_directory = "out";
    int threads = 1;
    bool seedless = true;  // no RNG anywhere in a run; recorded in the manifest
};

/// Parses a config or a previously written manifest (its "config" object
/// is used). Schema violations raise ConfigError naming the field path.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Serialized resolved config as deterministic JSON (manifest body).
std::string config_to_json(const ExperimentConfig& cfg);

/// Materializes every default into numbers: integration step, frequency
/// step, symbolic switch phases (detected on a reference run and snapped
/// to the grid). Validates all parameter invariants before any run.
/// Idempotent: resolving a resolved config is the identity.
struct ResolvedExperiment {
    ExperimentConfig config;                 // fully numeric
    std::vector<std::string> notes;          // e.g. how t_switch was found
    std::vector<std::string> warnings;
};
ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

const std::vector<std::string>& preset_catalog();
bool is_known_preset(const std::string& name);

/// Config behind a named preset. Unknown name -> ConfigError listing the
/// catalog.
ExperimentConfig preset_config(const std::string& name);

struct RunOutcome {
    std::vector<std::filesystem::path> files;  // everything written, manifest last
    std::vector<std::string> warnings;
};

/// Runs a (resolved or raw) config: population time series, TRPS maps,
/// scans and benchmark reports as requested, plus a manifest recording
/// the exact resolved configuration. All writes happen after the
/// computation finishes. out_dir overrides config.output_directory when
/// nonempty.
RunOutcome run_experiment(const ExperimentConfig& cfg,
                          const std::filesystem::path& out_dir = {});

RunOutcome run_preset(const std::string& name, const std::filesystem::path& out_dir = {},
                      std::optional<OutputFormat> format = std::nullopt, int threads = 0);

RunOutcome run_custom(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_dir = {},
                      std::optional<OutputFormat> format = std::nullopt, int threads = 0);

}  // namespace trps
