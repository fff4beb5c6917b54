#include <algorithm>
#include <cmath>

#include "trps/errors.hpp"
#include "trps/experiment.hpp"

namespace trps {

namespace {

ExperimentConfig base_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    cfg.model = ModelParams{};  // {g, eta, gamma, kappa} = {50, 400, 1, 20} GHz
    cfg.initial_state = "e000";
    cfg.output_directory = "out/" + name;
    return cfg;
}

constexpr double kDeltaOn = 480.0;  // 1.2 * eta

ExperimentConfig make_fig3(const std::string& name) {
    ExperimentConfig cfg = base_config(name);
    cfg.grid.t1 = 0.5;
    if (name == "fig3a") {
        cfg.schedule.schedule = DetuningSchedule::constant(kDeltaOn);
    } else if (name == "fig3b") {
        cfg.schedule.schedule = DetuningSchedule::step(kDeltaOn, 0.0, 0.0);
        cfg.schedule.switch_phase = "first-valley";
    } else if (name == "fig3c") {
        cfg.schedule.schedule = DetuningSchedule::step(kDeltaOn, 0.0, 0.0);
        cfg.schedule.switch_phase = "first-peak";
    } else {  // fig3d: reverse switch; the turn-on time is a free knob
        cfg.schedule.schedule = DetuningSchedule::step(0.0, kDeltaOn, 0.1);
    }
    return cfg;
}

ExperimentConfig make_fig5() {
    ExperimentConfig cfg = base_config("fig5");
    cfg.grid.t1 = 0.35;
    cfg.schedule.schedule = DetuningSchedule::gaussian_fall(kDeltaOn, 0.0, 0.0, 0.003);
    cfg.schedule.switch_phase = "first-valley";
    cfg.observables = {ObservableSpec{"sigma", {}}};
    SpectrumSpec sp;
    sp.method = SpectrumMethod::Both;
    sp.delta_s = {50.0};
    sp.epsilon = 1e-3;
    cfg.spectrum = sp;
    return cfg;
}

ExperimentConfig make_trps_maps(const std::string& name) {
    ExperimentConfig cfg = base_config(name);
    if (name == "fig6") {
        cfg.grid.t1 = 1.0;  // the 5 GHz filter needs ~1/delta_s of tail
        cfg.schedule.schedule = DetuningSchedule::constant(kDeltaOn);
    } else {
        cfg.grid.t1 = 0.5;
        cfg.schedule.schedule = DetuningSchedule::step(kDeltaOn, 0.0, 0.0);
        cfg.schedule.switch_phase = name == "fig8" ? "first-valley" : "first-peak";
    }
    SpectrumSpec sp;
    sp.method = SpectrumMethod::Sensor;
    sp.delta_s = {5.0, 50.0, 200.0};
    sp.epsilon = 1e-3;
    cfg.spectrum = sp;
    return cfg;
}

ExperimentConfig make_gscan() {
    ExperimentConfig cfg = base_config("appC-gscan");
    cfg.model.gamma = 0.0;
    cfg.model.kappa = 0.0;
    cfg.schedule.schedule = DetuningSchedule::constant(0.0);
    cfg.grid.t1 = 0.2;
    ScanSpec scan;
    scan.parameter = "g";
    for (int k = 1; k <= 20; ++k) {
        scan.values.push_back(0.05 * static_cast<double>(k) * cfg.model.eta);
    }
    cfg.scan = scan;
    return cfg;
}

ExperimentConfig make_deltascan() {
    ExperimentConfig cfg = base_config("appD-deltascan");
    cfg.schedule.schedule = DetuningSchedule::step(kDeltaOn, 0.0, 0.0);
    cfg.schedule.switch_phase = "first-valley";
    cfg.grid.t1 = 0.5;
    ScanSpec scan;
    scan.parameter = "delta";
    scan.values = {0.4 * 400.0, 0.8 * 400.0, 1.2 * 400.0, 1.6 * 400.0, 2.0 * 400.0};
    cfg.scan = scan;
    return cfg;
}

ExperimentConfig make_t0scan() {
    ExperimentConfig cfg = base_config("appD-t0scan");
    cfg.schedule.schedule = DetuningSchedule::step(kDeltaOn, 0.0, 0.0);
    cfg.grid.t1 = 0.5;
    ScanSpec scan;
    scan.parameter = "t_switch";
    const double period = M_PI / effective_coupling(kDeltaOn, 400.0, 50.0);
    for (int k = 1; k <= 8; ++k) {
        scan.values.push_back(period * static_cast<double>(k) / 8.0);
    }
    cfg.scan = scan;
    return cfg;
}

ExperimentConfig make_bench() {
    ExperimentConfig cfg = base_config("bench-fig7");
    cfg.schedule.schedule = DetuningSchedule::constant(kDeltaOn);
    cfg.bench = ScalingSuiteConfig{};
    return cfg;
}

}  // namespace

const std::vector<std::string>& preset_catalog() {
    static const std::vector<std::string> kCatalog = {
        "fig3a", "fig3b", "fig3c", "fig3d", "fig5", "fig6", "fig8", "fig9",
        "appC-gscan", "appD-deltascan", "appD-t0scan", "bench-fig7"};
    return kCatalog;
}

bool is_known_preset(const std::string& name) {
    const auto& catalog = preset_catalog();
    return std::find(catalog.begin(), catalog.end(), name) != catalog.end();
}

ExperimentConfig preset_config(const std::string& name) {
    if (!is_known_preset(name)) {
        std::string msg = "unknown preset '" + name + "'; available presets:";
        for (const std::string& p : preset_catalog()) msg += " " + p;
        throw ConfigError(msg);
    }
    if (name.rfind("fig3", 0) == 0) return make_fig3(name);
    if (name == "fig5") return make_fig5();
    if (name == "fig6" || name == "fig8" || name == "fig9") return make_trps_maps(name);
    if (name == "appC-gscan") return make_gscan();
    if (name == "appD-deltascan") return make_deltascan();
    if (name == "appD-t0scan") return make_t0scan();
    return make_bench();
}

}  // namespace trps
