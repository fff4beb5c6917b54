#include <json.hpp>

#include <cctype>
#include <cmath>
#include <sstream>

#include "trps/errors.hpp"
#include "trps/experiment.hpp"
#include "trps/propagate.hpp"
#include "trps/regression.hpp"
#include "trps/sensor.hpp"
#include "trps/version.hpp"
#include "writers.hpp"

namespace trps {

namespace {

using Json = nlohmann::ordered_json;

int state_index(const std::string& label) {
    if (label == "e000" || label == "e") return basis::kEmitter;
    if (label == "vac" || label == "vacuum") return basis::kVacuum;
    if (label == "a") return basis::kLeft;
    if (label == "b") return basis::kMiddle;
    if (label == "c") return basis::kRight;
    throw ConfigError("unknown initial state '" + label + "'");
}

std::string file_tag(const std::string& label) {
    std::string out;
    for (char ch : label) {
        out += (std::isalnum(static_cast<unsigned char>(ch)) != 0) ? ch : '_';
    }
    return out;
}

std::string ds_tag(double delta_s) {
    std::ostringstream os;
    os << "ds" << io::format_number(delta_s);
    return os.str();
}

struct PendingFile {
    std::string stem;
    io::Table table;
};

/// Populations <O^dag O>(t) for each observable on the run's grid.
struct DynamicsResult {
    std::vector<double> times;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> populations;
};

DynamicsResult run_dynamics(const ExperimentConfig& cfg,
                            std::vector<std::string>* warnings) {
    const TimeGrid grid{cfg.grid.t0, cfg.grid.t1, cfg.grid.dt};
    const LindbladGenerator gen =
        build_time_dependent_generator(cfg.schedule.schedule, cfg.model);
    const DensityMatrix rho0 =
        basis_state(basis::kSystemDim, state_index(cfg.initial_state));

    std::vector<Operator> number_ops;
    DynamicsResult result;
    for (const ObservableSpec& spec : cfg.observables) {
        const Operator low = spec.build();
        number_ops.push_back(low.adjoint() * low);
        result.labels.push_back(spec.label);
        result.populations.emplace_back();
    }

    PropagationOptions opts;
    opts.warnings = warnings;
    const int stride = cfg.grid.output_stride;
    propagate_observed(rho0, gen, grid, [&](long step, double t, const DensityMatrix& rho) {
        if (step % stride != 0) return;
        result.times.push_back(t);
        for (size_t k = 0; k < number_ops.size(); ++k) {
            result.populations[k].push_back(expectation(rho, number_ops[k]).real());
        }
    }, opts);
    return result;
}

std::vector<double> omega_grid_of(const SpectrumSpec& sp) {
    std::vector<double> omegas;
    for (double w = sp.omega_min; w <= sp.omega_max + 1e-9 * sp.omega_step;
         w += sp.omega_step) {
        omegas.push_back(w);
    }
    return omegas;
}

void run_spectra(const ExperimentConfig& cfg, std::vector<PendingFile>& files,
                 std::vector<std::string>* warnings) {
    const SpectrumSpec& sp = *cfg.spectrum;
    const TimeGrid grid{cfg.grid.t0, cfg.grid.t1, cfg.grid.dt};
    const std::vector<double> omegas = omega_grid_of(sp);
    const LindbladGenerator gen =
        build_time_dependent_generator(cfg.schedule.schedule, cfg.model);
    const DensityMatrix rho0 =
        basis_state(basis::kSystemDim, state_index(cfg.initial_state));

    // Delay horizon margin: one coherent exchange period of the initial
    // or final configuration, with the bare coupling as fallback when the
    // emitter is decoupled at both ends.
    const double geff = std::max(
        std::abs(effective_coupling(cfg.schedule.schedule.delta_initial, cfg.model.eta,
                                    cfg.model.g)),
        std::abs(effective_coupling(cfg.schedule.schedule.delta_final, cfg.model.eta,
                                    cfg.model.g)));
    const double margin_period = M_PI / (geff > 1e-9 ? geff : cfg.model.g);

    for (const ObservableSpec& spec : cfg.observables) {
        const Operator observed = spec.build();
        for (double delta_s : sp.delta_s) {
            const std::string stem_base =
                "trps_" + file_tag(spec.label) + "_" + ds_tag(delta_s);
            if (sp.method == SpectrumMethod::Sensor || sp.method == SpectrumMethod::Both) {
                SensorRunOptions opts;
                opts.output_stride = sp.output_stride;
                opts.threads = cfg.threads;
                opts.warnings = warnings;
                const TRPSMap map = sensor_trps_for_generator(
                    gen, rho0, observed, spec.label, omegas, grid, delta_s, sp.epsilon,
                    cfg.model.g, opts);
                map.validate();
                files.push_back({stem_base + "_sensor", io::trps_table(map)});
                files.push_back({stem_base + "_sensor_time_integrated",
                                 io::integrated_table("omega_GHz", map.frequencies,
                                                      map.time_integrated())});
                files.push_back({stem_base + "_sensor_frequency_integrated",
                                 io::integrated_table("t_ns", map.times,
                                                      map.frequency_integrated())});
            }
            if (sp.method == SpectrumMethod::Analytic || sp.method == SpectrumMethod::Both) {
                CorrelatorOptions copts;
                copts.threads = cfg.threads;
                const CorrelatorGrid corr =
                    two_time_correlator(gen, rho0, observed, grid,
                                        default_tau_max(delta_s, margin_period), copts);
                AnalyticTrpsOptions aopts;
                aopts.output_stride = sp.output_stride;
                aopts.threads = cfg.threads;
                aopts.warnings = warnings;
                const TRPSMap map =
                    analytic_trps(corr, omegas, delta_s, spec.label, aopts);
                map.validate(1e-10);
                files.push_back({stem_base + "_analytic", io::trps_table(map)});
                files.push_back({stem_base + "_analytic_time_integrated",
                                 io::integrated_table("omega_GHz", map.frequencies,
                                                      map.time_integrated())});
                files.push_back({stem_base + "_analytic_frequency_integrated",
                                 io::integrated_table("t_ns", map.times,
                                                      map.frequency_integrated())});
            }
        }
    }
}

void run_scan(const ExperimentConfig& cfg, std::vector<PendingFile>& files,
              std::vector<std::string>* warnings, std::vector<std::string>& notes) {
    const ScanSpec& scan = *cfg.scan;
    std::vector<std::vector<std::vector<double>>> population_blocks;
    std::vector<double> times;
    std::vector<std::string> labels;

    for (double value : scan.values) {
        ExperimentConfig point = cfg;
        point.scan.reset();
        if (scan.parameter == "g") {
            point.model.g = value;
        } else if (scan.parameter == "delta") {
            point.schedule.schedule.delta_initial = value;
            if (point.schedule.schedule.kind == DetuningSchedule::Kind::Constant) {
                point.schedule.schedule.delta_final = value;
            }
        } else {  // t_switch
            point.schedule.schedule.t_switch = value;
            point.schedule.switch_phase.clear();
        }
        // Per-value phase detection (deferred for delta scans) and grid
        // snapping reuse the standard resolution path.
        const ResolvedExperiment resolved = resolve_experiment(point);
        for (const std::string& note : resolved.notes) {
            notes.push_back("scan " + scan.parameter + "=" + io::format_number(value) +
                            ": " + note);
        }
        const DynamicsResult dyn = run_dynamics(resolved.config, warnings);
        if (times.empty()) {
            times = dyn.times;
            labels = dyn.labels;
        }
        population_blocks.push_back(dyn.populations);
    }

    const std::string column = scan.parameter == "g"      ? "g_GHz"
                               : scan.parameter == "delta" ? "delta_GHz"
                                                           : "t_switch_ns";
    files.push_back({"scan_" + scan.parameter,
                     io::scan_table(column, times, scan.values, labels, population_blocks)});
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& input,
                          const std::filesystem::path& out_dir) {
    ResolvedExperiment resolved = resolve_experiment(input);
    const ExperimentConfig& cfg = resolved.config;
    RunOutcome outcome;
    outcome.warnings = resolved.warnings;

    const std::filesystem::path directory =
        out_dir.empty() ? std::filesystem::path(cfg.output_directory) : out_dir;

    // Fail on an unusable output location before any computation.
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory)) {
        throw IoError("cannot create output directory " + directory.string());
    }
    {
        const auto probe = directory / ".write_probe";
        io::write_text(probe, "ok");
        std::filesystem::remove(probe, ec);
    }

    std::vector<PendingFile> files;

    if (!cfg.scan) {
        const DynamicsResult dyn = run_dynamics(cfg, &outcome.warnings);
        files.push_back(
            {"populations", io::timeseries_table(dyn.times, dyn.labels, dyn.populations)});
    } else {
        run_scan(cfg, files, &outcome.warnings, resolved.notes);
    }

    if (cfg.spectrum) {
        run_spectra(cfg, files, &outcome.warnings);
    }

    if (cfg.bench) {
        const std::vector<ScalingReport> reports = run_scaling_suite(*cfg.bench);
        files.push_back({"bench_runtime", io::bench_table(reports)});
        files.push_back({"bench_slopes", io::bench_slopes_table(reports)});
    }

    // Single finalization phase: every table lands only after the whole
    // computation succeeded.
    for (const PendingFile& f : files) {
        outcome.files.push_back(io::write_table(directory, f.stem, cfg.format, f.table));
    }

    Json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = Json::parse(config_to_json(cfg));
    Json derived;
    derived["steps"] = TimeGrid{cfg.grid.t0, cfg.grid.t1, cfg.grid.dt}.steps();
    derived["deterministic"] = true;  // no RNG in any computation path
    derived["notes"] = resolved.notes;
    manifest["derived"] = derived;
    manifest["warnings"] = outcome.warnings;
    Json written = Json::array();
    for (const auto& f : outcome.files) written.push_back(f.filename().string());
    manifest["outputs"] = written;
    outcome.files.push_back(
        io::write_text(directory / "manifest.json", manifest.dump(2) + "\n"));
    return outcome;
}

RunOutcome run_preset(const std::string& name, const std::filesystem::path& out_dir,
                      std::optional<OutputFormat> format, int threads) {
    ExperimentConfig cfg = preset_config(name);
    if (format) cfg.format = *format;
    if (threads > 0) cfg.threads = threads;
    return run_experiment(cfg, out_dir);
}

RunOutcome run_custom(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_dir,
                      std::optional<OutputFormat> format, int threads) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (!cfg.preset.empty() && cfg.preset != "custom" && !is_known_preset(cfg.preset)) {
        throw ConfigError("config names unknown preset '" + cfg.preset + "'");
    }
    if (format) cfg.format = *format;
    if (threads > 0) cfg.threads = threads;
    return run_experiment(cfg, out_dir);
}

}  // namespace trps
