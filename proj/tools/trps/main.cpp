// Command-line front end: experiment presets, custom configs, parameter
// scans and the runtime-scaling benchmark, all emitting plottable tables
// plus a manifest that reproduces the run bit-for-bit.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "trps/errors.hpp"
#include "trps/experiment.hpp"
#include "trps/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int threads = 0;
    bool seedless = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool wants_config) {
    if (wants_config) {
        cmd->add_option("--config", flags.config_path, "experiment config file (JSON)");
    }
    cmd->add_option("--out", flags.out_dir, "output directory (overrides the config)");
    cmd->add_option("--format", flags.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", flags.threads,
                    "worker threads for independent frequency/scan points");
    cmd->add_flag("--seedless", flags.seedless,
                  "assert that the run uses no randomness (always true; recorded)");
}

std::optional<trps::OutputFormat> format_of(const CommonFlags& flags) {
    if (flags.format.empty()) return std::nullopt;
    return flags.format == "csv" ? trps::OutputFormat::Csv : trps::OutputFormat::Json;
}

trps::ExperimentConfig load_config(const CommonFlags& flags, const char* verb) {
    if (flags.config_path.empty()) {
        throw trps::ConfigError(std::string(verb) + " requires --config <path>");
    }
    return trps::parse_config_file(flags.config_path);
}

void apply_flags(trps::ExperimentConfig& cfg, const CommonFlags& flags) {
    if (auto fmt = format_of(flags)) cfg.format = *fmt;
    if (flags.threads > 0) cfg.threads = flags.threads;
    if (flags.seedless) cfg.seedless = true;
}

void report(const trps::RunOutcome& outcome) {
    for (const std::string& warning : outcome.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    for (const auto& file : outcome.files) {
        std::cout << file.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-resolved physical spectra of a switched emitter-three-cavity system"};
    app.set_version_flag("--version", trps::kVersion);
    app.require_subcommand(1);

    CommonFlags dyn_flags, spec_flags, scan_flags, bench_flags, preset_flags, validate_flags;
    std::string preset_name, validate_path;

    CLI::App* dynamics = app.add_subcommand("dynamics", "population time series of a config");
    add_common(dynamics, dyn_flags, true);

    CLI::App* spectrum = app.add_subcommand("spectrum", "TRPS maps of a config");
    add_common(spectrum, spec_flags, true);

    CLI::App* scan = app.add_subcommand("scan", "parameter scan of a config");
    add_common(scan, scan_flags, true);

    CLI::App* bench = app.add_subcommand("bench", "runtime-scaling benchmark");
    add_common(bench, bench_flags, true);

    CLI::App* preset = app.add_subcommand("preset", "run a named experiment preset");
    preset->add_option("name", preset_name, "preset name")->required();
    add_common(preset, preset_flags, false);

    CLI::App* validate = app.add_subcommand("validate", "validate a config and print it resolved");
    validate->add_option("config", validate_path, "config file to validate")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dynamics->parsed()) {
            trps::ExperimentConfig cfg = load_config(dyn_flags, "dynamics");
            cfg.spectrum.reset();
            cfg.bench.reset();
            apply_flags(cfg, dyn_flags);
            report(trps::run_experiment(cfg, dyn_flags.out_dir));
        } else if (spectrum->parsed()) {
            trps::ExperimentConfig cfg = load_config(spec_flags, "spectrum");
            if (!cfg.spectrum) {
                throw trps::ConfigError("spectrum: config has no 'spectrum' section");
            }
            apply_flags(cfg, spec_flags);
            report(trps::run_experiment(cfg, spec_flags.out_dir));
        } else if (scan->parsed()) {
            trps::ExperimentConfig cfg = load_config(scan_flags, "scan");
            if (!cfg.scan) {
                throw trps::ConfigError("scan: config has no 'scan' section");
            }
            apply_flags(cfg, scan_flags);
            report(trps::run_experiment(cfg, scan_flags.out_dir));
        } else if (bench->parsed()) {
            trps::ExperimentConfig cfg;
            if (!bench_flags.config_path.empty()) {
                cfg = trps::parse_config_file(bench_flags.config_path);
            } else {
                cfg = trps::preset_config("bench-fig7");
            }
            if (!cfg.bench) cfg.bench = trps::ScalingSuiteConfig{};
            apply_flags(cfg, bench_flags);
            report(trps::run_experiment(cfg, bench_flags.out_dir));
        } else if (preset->parsed()) {
            report(trps::run_preset(preset_name, preset_flags.out_dir,
                                    format_of(preset_flags), preset_flags.threads));
        } else if (validate->parsed()) {
            const trps::ExperimentConfig cfg = trps::parse_config_file(validate_path);
            const trps::ResolvedExperiment resolved = trps::resolve_experiment(cfg);
            std::cout << trps::config_to_json(resolved.config) << "\n";
            for (const std::string& note : resolved.notes) {
                std::cerr << "note: " << note << "\n";
            }
        }
    } catch (const trps::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const trps::DomainError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const trps::ShapeError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const trps::InvariantViolation& err) {
        std::cerr << "numerical invariant violated: " << err.what() << "\n";
        return kExitInvariant;
    } catch (const trps::IoError& err) {
        std::cerr << "i/o error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& err) {
        std::cerr << "i/o error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
