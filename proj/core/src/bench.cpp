#include "trps/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "trps/analysis.hpp"
#include "trps/errors.hpp"
#include "trps/regression.hpp"
#include "trps/sensor.hpp"
#include "trps/three_cavity.hpp"

namespace trps {

std::string to_string(TrpsMethod m) {
    return m == TrpsMethod::Sensor ? "sensor" : "analytic";
}

namespace {

// Fixed integration step valid for the reference model at every size;
// the window grows as N_t * dt so each size does exactly N_t steps of
// well-conditioned work.
constexpr double kBenchStep = 2.0e-4;   // ns
constexpr double kBenchDeltaS = 50.0;   // GHz
constexpr double kBenchEpsilon = 1e-3;  // GHz

std::vector<double> bench_omega_grid(long n_w) {
    std::vector<double> omegas(static_cast<size_t>(n_w));
    for (long k = 0; k < n_w; ++k) {
        omegas[static_cast<size_t>(k)] =
            -100.0 + 200.0 * static_cast<double>(k) / static_cast<double>(std::max(1L, n_w - 1));
    }
    return omegas;
}

}  // namespace

ProfileResult runtime_profile(TrpsMethod method, long n_t, long n_tau, long n_w) {
    if (n_t < 16 || n_w < 16 || (method == TrpsMethod::Analytic && n_tau < 16)) {
        throw DomainError("runtime_profile: grid sizes must be >= 16");
    }
    const ModelParams params;
    const DetuningSchedule schedule = DetuningSchedule::constant(1.2 * params.eta);
    const TimeGrid grid = TimeGrid::with_steps(0.0, static_cast<double>(n_t) * kBenchStep, n_t);
    const std::vector<double> omegas = bench_omega_grid(n_w);

    ProfileResult result;
    const auto start = std::chrono::steady_clock::now();
    if (method == TrpsMethod::Sensor) {
        SensorRunOptions opts;
        opts.threads = 1;
        opts.counters = &result.counters;
        opts.keep_raw = false;
        // The benchmark tracks propagation work only; validity of the
        // coarse grids is covered by the accuracy tests.
        opts.check_invariants = false;
        sensor_trps(schedule, params, emitter_lowering(), "sigma", omegas, grid,
                    kBenchDeltaS, kBenchEpsilon, opts);
    } else {
        const LindbladGenerator gen = build_time_dependent_generator(schedule, params);
        const DensityMatrix rho0 = basis_state(basis::kSystemDim, basis::kEmitter);
        CorrelatorOptions copts;
        copts.threads = 1;
        copts.counters = &result.counters;
        const double tau_max = static_cast<double>(n_tau) * grid.dt;
        const CorrelatorGrid corr =
            two_time_correlator(gen, rho0, emitter_lowering(), grid, tau_max, copts);
        AnalyticTrpsOptions aopts;
        aopts.threads = 1;
        aopts.counters = &result.counters;
        analytic_trps(corr, omegas, kBenchDeltaS, "sigma", aopts);
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();
    return result;
}

namespace {

ScalingReport measure_axis(TrpsMethod method, const std::string& axis,
                           const std::vector<long>& sizes, long fixed_other, int repeats) {
    ScalingReport report;
    report.method = to_string(method);
    report.axis = axis;
    report.sizes = sizes;

    for (long size : sizes) {
        const long n_t = axis == "Nt" ? size : fixed_other;
        const long n_w = axis == "Nw" ? size : fixed_other;
        const long n_tau = n_t;  // delay resolution follows the time grid

        runtime_profile(method, n_t, n_tau, n_w);  // warm-up
        std::vector<double> times;
        WorkCounters counters;
        for (int r = 0; r < repeats; ++r) {
            const ProfileResult res = runtime_profile(method, n_t, n_tau, n_w);
            times.push_back(res.seconds);
            counters = res.counters;
        }
        std::sort(times.begin(), times.end());
        report.runtimes_s.push_back(times[times.size() / 2]);
        if (method == TrpsMethod::Sensor) {
            report.ops.push_back(counters.propagation_steps);
            report.expected_ops.push_back(static_cast<std::uint64_t>(n_t) *
                                          static_cast<std::uint64_t>(n_w));
        } else {
            report.ops.push_back(counters.quadrature_evals);
            report.expected_ops.push_back(static_cast<std::uint64_t>(n_w) *
                                          static_cast<std::uint64_t>(n_t + 1) *
                                          static_cast<std::uint64_t>(n_tau + 1));
        }
    }

    std::vector<double> log_sizes, log_times;
    for (size_t i = 0; i < sizes.size(); ++i) {
        log_sizes.push_back(std::log(static_cast<double>(sizes[i])));
        log_times.push_back(std::log(report.runtimes_s[i]));
        if (i > 0 && report.runtimes_s[i] < 0.9 * report.runtimes_s[i - 1]) {
            report.monotone = false;
        }
    }
    const LineFit fit = fit_line(log_sizes, log_times);
    report.fitted_slope = fit.slope;
    report.slope_stderr = fit.slope_stderr;

    const double top = *std::max_element(report.runtimes_s.begin(), report.runtimes_s.end());
    for (double t : report.runtimes_s) report.normalized.push_back(t / top);
    return report;
}

}  // namespace

std::vector<ScalingReport> run_scaling_suite(const ScalingSuiteConfig& cfg) {
    if (cfg.repeats < 3) {
        throw DomainError("run_scaling_suite: need at least 3 repeats");
    }
    auto check_span = [](const std::vector<long>& sizes) {
        if (sizes.size() < 4 || !std::is_sorted(sizes.begin(), sizes.end())) {
            throw DomainError("run_scaling_suite: sizes must be >= 4 increasing values");
        }
        if (static_cast<double>(sizes.back()) / static_cast<double>(sizes.front()) < 8.0) {
            throw DomainError("run_scaling_suite: sizes must span at least 3 octaves");
        }
    };
    check_span(cfg.sizes_nt);
    check_span(cfg.sizes_nw);

    std::vector<ScalingReport> reports;
    for (TrpsMethod method : {TrpsMethod::Analytic, TrpsMethod::Sensor}) {
        reports.push_back(measure_axis(method, "Nt", cfg.sizes_nt, cfg.fixed_nw, cfg.repeats));
    }
    for (TrpsMethod method : {TrpsMethod::Analytic, TrpsMethod::Sensor}) {
        reports.push_back(measure_axis(method, "Nw", cfg.sizes_nw, cfg.fixed_nt, cfg.repeats));
    }
    return reports;
}

}  // namespace trps
