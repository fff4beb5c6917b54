#pragma once

#include <string>
#include <vector>

#include "trps/work_counters.hpp"

namespace trps {

enum class TrpsMethod { Sensor, Analytic };

std::string to_string(TrpsMethod m);

struct ProfileResult {
    double seconds = 0.0;
    WorkCounters counters;
};

/// Runs the full pipeline of one method on the no-switch reference model
/// at the requested grid sizes (N_tau applies to the analytic method
/// only) and returns wall time plus deterministic work counters.
/// Expected counts: sensor propagation steps = Nt * Nw; analytic
/// quadrature evaluations = Nw * (Nt + 1) * (Ntau + 1).
ProfileResult runtime_profile(TrpsMethod method, long n_t, long n_tau, long n_w);

/// Log-log scaling fit for one method along one grid axis.
struct ScalingReport {
    std::string method;              // "sensor" | "analytic"
    std::string axis;                // "Nt" | "Nw"
    std::vector<long> sizes;
    std::vector<double> runtimes_s;  // median of repeats
    std::vector<std::uint64_t> ops;  // counter relevant to the method
    std::vector<std::uint64_t> expected_ops;  // closed-form cost per size
    std::vector<double> normalized;  // runtimes / max
    double fitted_slope = 0.0;
    double slope_stderr = 0.0;
    bool monotone = true;            // false when a runtime drops beyond noise

    bool ops_match() const { return ops == expected_ops; }
};

struct ScalingSuiteConfig {
    std::vector<long> sizes_nt = {64, 128, 256, 512, 1024};
    std::vector<long> sizes_nw = {8, 16, 32, 64, 128};
    long fixed_nw = 16;   // frequency points along the Nt axis
    long fixed_nt = 256;  // time steps along the Nw axis
    int repeats = 3;      // median of this many timed runs after a warm-up
};

/// Fig.-7-style benchmark: both methods along both axes, strictly
/// sequential/single-threaded, N_tau = N_t on the analytic method.
std::vector<ScalingReport> run_scaling_suite(const ScalingSuiteConfig& cfg = {});

}  // namespace trps
