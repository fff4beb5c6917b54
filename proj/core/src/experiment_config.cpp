#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trps/analysis.hpp"
#include "trps/errors.hpp"
#include "trps/experiment.hpp"
#include "trps/propagate.hpp"

namespace trps {

using Json = nlohmann::ordered_json;

Operator ObservableSpec::build() const {
    static const std::map<std::string, int> kModes = {{"sigma", basis::kEmitter},
                                                      {"a", basis::kLeft},
                                                      {"b", basis::kMiddle},
                                                      {"c", basis::kRight}};
    if (coeffs.empty()) {
        const auto it = kModes.find(label);
        if (it == kModes.end()) {
            throw ConfigError("observable '" + label +
                              "' is not one of sigma/a/b/c and has no coefficients");
        }
        return lowering_operator(basis::kSystemDim, it->second);
    }
    Operator op = Operator::Zero(basis::kSystemDim, basis::kSystemDim);
    for (const auto& [mode, weight] : coeffs) {
        const auto it = kModes.find(mode);
        if (it == kModes.end()) {
            throw ConfigError("observable '" + label + "': unknown mode '" + mode + "'");
        }
        op += weight * lowering_operator(basis::kSystemDim, it->second);
    }
    return op;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

double get_number(const Json& node, const std::string& path) {
    if (!node.is_number()) fail(path, "expected a number");
    return node.get<double>();
}

double opt_number(const Json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj.at(key), path + "." + key);
}

long opt_integer(const Json& obj, const char* key, const std::string& path, long fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& node = obj.at(key);
    if (!node.is_number_integer()) fail(path + "." + key, "expected an integer");
    return node.get<long>();
}

std::string opt_string(const Json& obj, const char* key, const std::string& path,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& node = obj.at(key);
    if (!node.is_string()) fail(path + "." + key, "expected a string");
    return node.get<std::string>();
}

const Json& require_object(const Json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key) || !obj.at(key).is_object()) {
        fail(path + "." + key, "expected an object");
    }
    return obj.at(key);
}

DetuningSchedule::Kind parse_kind(const std::string& text, const std::string& path) {
    if (text == "constant") return DetuningSchedule::Kind::Constant;
    if (text == "step") return DetuningSchedule::Kind::Step;
    if (text == "gaussian-fall") return DetuningSchedule::Kind::GaussianFall;
    fail(path, "schedule kind must be constant | step | gaussian-fall");
}

std::string kind_name(DetuningSchedule::Kind kind) {
    switch (kind) {
        case DetuningSchedule::Kind::Constant: return "constant";
        case DetuningSchedule::Kind::Step: return "step";
        case DetuningSchedule::Kind::GaussianFall: return "gaussian-fall";
    }
    return "constant";
}

ExperimentConfig parse_config_object(const Json& root) {
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    ExperimentConfig cfg;
    cfg.preset = opt_string(root, "preset", "", "custom");

    if (root.contains("model")) {
        const Json& m = root.at("model");
        if (!m.is_object()) fail("model", "expected an object");
        cfg.model.g = opt_number(m, "g_GHz", "model", cfg.model.g);
        cfg.model.eta = opt_number(m, "eta_GHz", "model", cfg.model.eta);
        cfg.model.gamma = opt_number(m, "gamma_GHz", "model", cfg.model.gamma);
        cfg.model.kappa = opt_number(m, "kappa_GHz", "model", cfg.model.kappa);
        cfg.model.omega0 = opt_number(m, "omega0_GHz", "model", cfg.model.omega0);
    }

    if (root.contains("schedule")) {
        const Json& s = require_object(root, "schedule", "");
        DetuningSchedule& sch = cfg.schedule.schedule;
        sch.kind = parse_kind(opt_string(s, "kind", "schedule", "constant"), "schedule.kind");
        sch.delta_initial = opt_number(s, "delta_initial_GHz", "schedule", 0.0);
        sch.delta_final = opt_number(s, "delta_final_GHz", "schedule", 0.0);
        sch.fall_width = opt_number(s, "fall_width_ns", "schedule", 0.0);
        if (s.contains("t_switch")) {
            const Json& t = s.at("t_switch");
            if (t.is_number()) {
                sch.t_switch = t.get<double>();
            } else if (t.is_string()) {
                cfg.schedule.switch_phase = t.get<std::string>();
            } else {
                fail("schedule.t_switch", "expected a number (ns) or a phase string");
            }
        }
    }

    cfg.initial_state = opt_string(root, "initial_state", "", cfg.initial_state);

    if (root.contains("observables")) {
        const Json& list = root.at("observables");
        if (!list.is_array()) fail("observables", "expected an array");
        size_t idx = 0;
        for (const Json& item : list) {
            const std::string path = "observables[" + std::to_string(idx++) + "]";
            ObservableSpec spec;
            if (item.is_string()) {
                spec.label = item.get<std::string>();
            } else if (item.is_object()) {
                spec.label = opt_string(item, "label", path, "");
                if (spec.label.empty()) fail(path + ".label", "required for combinations");
                if (!item.contains("coeffs") || !item.at("coeffs").is_object()) {
                    fail(path + ".coeffs", "expected an object of mode -> weight");
                }
                for (const auto& [mode, w] : item.at("coeffs").items()) {
                    spec.coeffs[mode] = get_number(w, path + ".coeffs." + mode);
                }
            } else {
                fail(path, "expected a label string or {label, coeffs}");
            }
            cfg.observables.push_back(std::move(spec));
        }
    }

    if (root.contains("spectrum") && !root.at("spectrum").is_null()) {
        const Json& sp = require_object(root, "spectrum", "");
        SpectrumSpec spec;
        const std::string method = opt_string(sp, "method", "spectrum", "sensor");
        if (method == "sensor") {
            spec.method = SpectrumMethod::Sensor;
        } else if (method == "analytic") {
            spec.method = SpectrumMethod::Analytic;
        } else if (method == "both") {
            spec.method = SpectrumMethod::Both;
        } else {
            fail("spectrum.method", "must be sensor | analytic | both");
        }
        if (sp.contains("delta_s_GHz")) {
            const Json& ds = sp.at("delta_s_GHz");
            if (!ds.is_array() || ds.empty()) fail("spectrum.delta_s_GHz", "expected a nonempty array");
            spec.delta_s.clear();
            size_t idx = 0;
            for (const Json& v : ds) {
                spec.delta_s.push_back(
                    get_number(v, "spectrum.delta_s_GHz[" + std::to_string(idx++) + "]"));
            }
        }
        spec.omega_min = opt_number(sp, "omega_min_GHz", "spectrum", spec.omega_min);
        spec.omega_max = opt_number(sp, "omega_max_GHz", "spectrum", spec.omega_max);
        spec.omega_step = opt_number(sp, "omega_step_GHz", "spectrum", spec.omega_step);
        spec.epsilon = opt_number(sp, "epsilon_GHz", "spectrum", spec.epsilon);
        spec.output_stride =
            static_cast<int>(opt_integer(sp, "output_stride", "spectrum", spec.output_stride));
        cfg.spectrum = spec;
    }

    if (root.contains("scan") && !root.at("scan").is_null()) {
        const Json& sc = require_object(root, "scan", "");
        ScanSpec scan;
        scan.parameter = opt_string(sc, "parameter", "scan", "");
        if (!sc.contains("values") || !sc.at("values").is_array() || sc.at("values").empty()) {
            fail("scan.values", "expected a nonempty array of numbers");
        }
        size_t idx = 0;
        for (const Json& v : sc.at("values")) {
            scan.values.push_back(get_number(v, "scan.values[" + std::to_string(idx++) + "]"));
        }
        cfg.scan = scan;
    }

    if (root.contains("bench") && !root.at("bench").is_null()) {
        const Json& b = require_object(root, "bench", "");
        ScalingSuiteConfig suite;
        auto read_sizes = [&](const char* key, std::vector<long>& out) {
            if (!b.contains(key)) return;
            const Json& arr = b.at(key);
            if (!arr.is_array()) fail(std::string("bench.") + key, "expected an array");
            out.clear();
            size_t idx = 0;
            for (const Json& v : arr) {
                const std::string path = "bench." + std::string(key) + "[" + std::to_string(idx++) + "]";
                if (!v.is_number_integer()) fail(path, "expected an integer");
                out.push_back(v.get<long>());
            }
        };
        read_sizes("sizes_nt", suite.sizes_nt);
        read_sizes("sizes_nw", suite.sizes_nw);
        suite.fixed_nt = opt_integer(b, "fixed_nt", "bench", suite.fixed_nt);
        suite.fixed_nw = opt_integer(b, "fixed_nw", "bench", suite.fixed_nw);
        suite.repeats = static_cast<int>(opt_integer(b, "repeats", "bench", suite.repeats));
        cfg.bench = suite;
    }

    if (root.contains("grid")) {
        const Json& g = require_object(root, "grid", "");
        cfg.grid.t0 = opt_number(g, "t0_ns", "grid", cfg.grid.t0);
        cfg.grid.t1 = opt_number(g, "t1_ns", "grid", cfg.grid.t1);
        cfg.grid.dt = opt_number(g, "dt_ns", "grid", cfg.grid.dt);
        cfg.grid.output_stride =
            static_cast<int>(opt_integer(g, "output_stride", "grid", cfg.grid.output_stride));
    }

    if (root.contains("output")) {
        const Json& o = require_object(root, "output", "");
        cfg.output_directory = opt_string(o, "directory", "output", cfg.output_directory);
        const std::string fmt = opt_string(o, "format", "output", "csv");
        if (fmt == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (fmt == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            fail("output.format", "must be csv | json");
        }
    }

    cfg.threads = static_cast<int>(opt_integer(root, "threads", "", cfg.threads));
    if (root.contains("seedless")) {
        if (!root.at("seedless").is_boolean()) fail("seedless", "expected a boolean");
        cfg.seedless = root.at("seedless").get<bool>();
    }
    return cfg;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    // A manifest wraps the config; accept it directly for reruns.
    if (root.is_object() && root.contains("config")) {
        return parse_config_object(root.at("config"));
    }
    return parse_config_object(root);
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    Json root;
    root["preset"] = cfg.preset;
    root["model"] = {{"g_GHz", cfg.model.g},
                     {"eta_GHz", cfg.model.eta},
                     {"gamma_GHz", cfg.model.gamma},
                     {"kappa_GHz", cfg.model.kappa},
                     {"omega0_GHz", cfg.model.omega0}};
    Json sched;
    sched["kind"] = kind_name(cfg.schedule.schedule.kind);
    sched["delta_initial_GHz"] = cfg.schedule.schedule.delta_initial;
    sched["delta_final_GHz"] = cfg.schedule.schedule.delta_final;
    if (!cfg.schedule.switch_phase.empty()) {
        sched["t_switch"] = cfg.schedule.switch_phase;
    } else {
        sched["t_switch"] = cfg.schedule.schedule.t_switch;
    }
    sched["fall_width_ns"] = cfg.schedule.schedule.fall_width;
    root["schedule"] = sched;
    root["initial_state"] = cfg.initial_state;
    Json obs = Json::array();
    for (const ObservableSpec& o : cfg.observables) {
        if (o.coeffs.empty()) {
            obs.push_back(o.label);
        } else {
            Json item;
            item["label"] = o.label;
            Json coeffs;
            for (const auto& [mode, w] : o.coeffs) coeffs[mode] = w;
            item["coeffs"] = coeffs;
            obs.push_back(item);
        }
    }
    root["observables"] = obs;
    if (cfg.spectrum) {
        Json sp;
        sp["method"] = cfg.spectrum->method == SpectrumMethod::Sensor     ? "sensor"
                       : cfg.spectrum->method == SpectrumMethod::Analytic ? "analytic"
                                                                          : "both";
        sp["delta_s_GHz"] = cfg.spectrum->delta_s;
        sp["omega_min_GHz"] = cfg.spectrum->omega_min;
        sp["omega_max_GHz"] = cfg.spectrum->omega_max;
        sp["omega_step_GHz"] = cfg.spectrum->omega_step;
        sp["epsilon_GHz"] = cfg.spectrum->epsilon;
        sp["output_stride"] = cfg.spectrum->output_stride;
        root["spectrum"] = sp;
    }
    if (cfg.scan) {
        root["scan"] = {{"parameter", cfg.scan->parameter}, {"values", cfg.scan->values}};
    }
    if (cfg.bench) {
        root["bench"] = {{"sizes_nt", cfg.bench->sizes_nt},
                         {"sizes_nw", cfg.bench->sizes_nw},
                         {"fixed_nt", cfg.bench->fixed_nt},
                         {"fixed_nw", cfg.bench->fixed_nw},
                         {"repeats", cfg.bench->repeats}};
    }
    root["grid"] = {{"t0_ns", cfg.grid.t0},
                    {"t1_ns", cfg.grid.t1},
                    {"dt_ns", cfg.grid.dt},
                    {"output_stride", cfg.grid.output_stride}};
    root["output"] = {{"directory", cfg.output_directory},
                      {"format", cfg.format == OutputFormat::Csv ? "csv" : "json"}};
    root["threads"] = cfg.threads;
    root["seedless"] = cfg.seedless;
    return root.dump(2);
}

namespace {

int initial_state_index(const std::string& label) {
    if (label == "e000" || label == "e") return basis::kEmitter;
    if (label == "vac" || label == "vacuum") return basis::kVacuum;
    if (label == "a") return basis::kLeft;
    if (label == "b") return basis::kMiddle;
    if (label == "c") return basis::kRight;
    throw ConfigError("config field 'initial_state': unknown label '" + label +
                      "' (expected e000, vac, a, b or c)");
}

}  // namespace

ResolvedExperiment resolve_experiment(const ExperimentConfig& input) {
    ResolvedExperiment out;
    out.config = input;
    ExperimentConfig& cfg = out.config;

    try {
        cfg.model.validate();
    } catch (const std::exception& err) {
        throw ConfigError(std::string("config field 'model': ") + err.what());
    }
    initial_state_index(cfg.initial_state);

    if (cfg.observables.empty()) {
        for (const char* label : {"sigma", "a", "b", "c"}) {
            cfg.observables.push_back(ObservableSpec{label, {}});
        }
    }
    for (const ObservableSpec& o : cfg.observables) o.build();  // validates labels

    if (cfg.threads < 1) cfg.threads = 1;
    if (cfg.grid.output_stride < 1) cfg.grid.output_stride = 1;
    if (!(cfg.grid.t1 > cfg.grid.t0)) {
        throw ConfigError("config field 'grid.t1_ns': must exceed grid.t0_ns");
    }
    if (cfg.grid.dt < 0.0) {
        throw ConfigError("config field 'grid.dt_ns': must be >= 0 (0 = automatic)");
    }

    DetuningSchedule& sched = cfg.schedule.schedule;
    try {
        sched.validate();
    } catch (const std::exception& err) {
        throw ConfigError(std::string("config field 'schedule': ") + err.what());
    }
    const std::string& phase = cfg.schedule.switch_phase;
    if (!phase.empty() && phase != "first-valley" && phase != "first-peak") {
        throw ConfigError("config field 'schedule.t_switch': unknown phase '" + phase +
                          "' (expected first-valley or first-peak)");
    }
    if (!phase.empty() && sched.kind == DetuningSchedule::Kind::Constant) {
        throw ConfigError(
            "config field 'schedule.t_switch': a phase needs a step or gaussian-fall schedule");
    }

    if (cfg.spectrum) {
        SpectrumSpec& sp = *cfg.spectrum;
        for (double ds : sp.delta_s) {
            if (!(ds > 0.0)) throw ConfigError("config field 'spectrum.delta_s_GHz': must be > 0");
        }
        if (!(sp.epsilon > 0.0)) {
            throw ConfigError("config field 'spectrum.epsilon_GHz': must be > 0");
        }
        if (!(sp.omega_max > sp.omega_min)) {
            throw ConfigError("config field 'spectrum.omega_max_GHz': must exceed omega_min_GHz");
        }
        if (sp.omega_step < 0.0) {
            throw ConfigError("config field 'spectrum.omega_step_GHz': must be >= 0 (0 = automatic)");
        }
        if (sp.omega_step == 0.0) {
            const double finest = *std::min_element(sp.delta_s.begin(), sp.delta_s.end());
            sp.omega_step = finest < 10.0 ? 2.0 : 5.0;
            out.notes.push_back("spectrum.omega_step_GHz defaulted to " +
                                std::to_string(sp.omega_step));
        }
        if (sp.output_stride < 1) sp.output_stride = 1;
    }

    if (cfg.scan) {
        const std::string& p = cfg.scan->parameter;
        if (p != "g" && p != "delta" && p != "t_switch") {
            throw ConfigError("config field 'scan.parameter': must be g | delta | t_switch");
        }
        if (p == "g") {
            for (double v : cfg.scan->values) {
                if (!(v > 0.0)) throw ConfigError("config field 'scan.values': g must be > 0");
            }
        }
    }
    if (cfg.bench) {
        if (cfg.bench->repeats < 3) {
            throw ConfigError("config field 'bench.repeats': must be >= 3");
        }
    }

    // Integration step: resolve against the largest Hamiltonian
    // eigenvalue the run can reach plus the fastest decay channel.
    if (cfg.grid.dt == 0.0) {
        std::vector<double> deltas = {sched.delta_initial, sched.delta_final};
        std::vector<double> couplings = {cfg.model.g};
        if (cfg.scan) {
            for (double v : cfg.scan->values) {
                if (cfg.scan->parameter == "delta") deltas.push_back(v);
                if (cfg.scan->parameter == "g") couplings.push_back(v);
            }
        }
        double omega_max = 0.0;
        for (double g : couplings) {
            ModelParams m = cfg.model;
            m.g = g;
            for (double d : deltas) {
                Eigen::SelfAdjointEigenSolver<Operator> es(hamiltonian(d, m),
                                                           Eigen::EigenvaluesOnly);
                omega_max = std::max(omega_max, es.eigenvalues().cwiseAbs().maxCoeff());
            }
        }
        double rate_max = std::max(cfg.model.gamma, cfg.model.kappa);
        if (cfg.spectrum) {
            omega_max = std::max({omega_max, std::abs(cfg.spectrum->omega_min),
                                  std::abs(cfg.spectrum->omega_max)});
            rate_max = std::max(
                rate_max, *std::max_element(cfg.spectrum->delta_s.begin(),
                                            cfg.spectrum->delta_s.end()));
        }
        const double target = default_time_step(omega_max, rate_max);
        cfg.grid.dt = TimeGrid::with_max_step(cfg.grid.t0, cfg.grid.t1, target).dt;
        out.notes.push_back("grid.dt_ns defaulted to " + std::to_string(cfg.grid.dt));
    } else {
        TimeGrid{cfg.grid.t0, cfg.grid.t1, cfg.grid.dt}.validate();
    }

    // Sudden switches must sit exactly on a grid point: the integrator
    // then sees purely pre-switch steps up to t_switch and purely
    // post-switch steps after it.
    if (sched.kind == DetuningSchedule::Kind::Step && cfg.schedule.switch_phase.empty() &&
        sched.t_switch > cfg.grid.t0 && sched.t_switch < cfg.grid.t1 &&
        !(cfg.scan && cfg.scan->parameter == "t_switch")) {
        const double snapped =
            cfg.grid.t0 +
            std::round((sched.t_switch - cfg.grid.t0) / cfg.grid.dt) * cfg.grid.dt;
        if (snapped != sched.t_switch) {
            out.notes.push_back("schedule.t_switch snapped from " +
                                std::to_string(sched.t_switch) + " to " +
                                std::to_string(snapped) + " ns (nearest grid point)");
            sched.t_switch = snapped;
        }
    }

    // Symbolic switch phases: first extremum of the emitter population on
    // a no-switch reference run, parabolic-refined, snapped to the grid.
    // For delta scans the detection is deferred to each scan value.
    const bool defer_phase = cfg.scan && cfg.scan->parameter == "delta";
    if (!phase.empty() && !defer_phase) {
        const TimeGrid grid{cfg.grid.t0, cfg.grid.t1, cfg.grid.dt};
        const LindbladGenerator ref = build_time_dependent_generator(
            DetuningSchedule::constant(sched.delta_initial), cfg.model);
        const DensityMatrix rho0 =
            basis_state(basis::kSystemDim, initial_state_index(cfg.initial_state));
        std::vector<double> ts, pe;
        propagate_observed(rho0, ref, grid, [&](long, double t, const DensityMatrix& rho) {
            ts.push_back(t);
            pe.push_back(rho(basis::kEmitter, basis::kEmitter).real());
        });
        const auto extrema = phase == "first-valley" ? local_minima(ts, pe)
                                                     : local_maxima(ts, pe);
        if (extrema.empty()) {
            throw ConfigError("schedule.t_switch: no " + phase +
                              " of the emitter population inside the time window");
        }
        const double snapped =
            grid.time_at(std::lround((extrema.front().x - grid.t0) / grid.dt));
        sched.t_switch = snapped;
        out.notes.push_back("schedule.t_switch resolved from " + phase + " to " +
                            std::to_string(snapped) + " ns (refined extremum at " +
                            std::to_string(extrema.front().x) + " ns, snapped to the grid)");
        cfg.schedule.switch_phase.clear();
    }

    return out;
}

}  // namespace trps
