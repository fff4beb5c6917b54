#pragma once

#include <string>
#include <vector>

#include "trps/lindblad.hpp"
#include "trps/operators.hpp"
#include "trps/propagate.hpp"
#include "trps/three_cavity.hpp"
#include "trps/time_grid.hpp"
#include "trps/trps_map.hpp"
#include "trps/work_counters.hpp"

namespace trps {

/// One auxiliary filter mode: a damped oscillator weakly coupled to the
/// observed operator. Its linewidth doubles as the spectral resolution.
struct SensorConfig {
    double omega_k = 0.0;     // center frequency relative to omega0 (GHz)
    double linewidth = 50.0;  // Gamma = delta_s (GHz)
    double epsilon = 1e-3;    // sensor-system coupling (GHz)

    void validate() const;

    /// Warns (no error) when epsilon is not small against the given
    /// system scale and the sensor linewidth.
    void warn_if_not_weak(double min_system_scale,
                          std::vector<std::string>* warnings) const;
};

/// Extends a system generator by one sensor mode on the joint
/// single-excitation space: H_tot(t) = H_S(t) + omega_k n_sensor
/// + epsilon (sensor^dag O + O^dag sensor), plus a (sensor, Gamma)
/// dissipator. The sensor starts in vacuum; observed must act on the
/// system space.
LindbladGenerator attach_sensor(const LindbladGenerator& gen, const Operator& observed,
                                const SensorConfig& cfg);

/// Embeds a system state/operator into the joint space (sensor vacuum).
Operator embed_with_sensor(const Operator& system_op);

/// Sensor population <n_k(t)> for every snapshot of a joint trajectory.
std::vector<double> sensor_population(const std::vector<DensityMatrix>& joint_series);

struct SensorRunOptions {
    int output_stride = 8;  // spectrum rows every this many grid steps
    int threads = 1;
    WorkCounters* counters = nullptr;
    std::vector<std::string>* warnings = nullptr;
    bool keep_raw = true;
    bool check_invariants = true;
};

/// Time-resolved physical spectrum by frequency scan: one independent
/// joint propagation per omega_k with Gamma = delta_s, normalized as
/// S = Gamma / (2 eps^2 pi) <n_k(t)>. Cost scales as O(N_t * N_omega).
TRPSMap sensor_trps(const DetuningSchedule& schedule, const ModelParams& params,
                    const Operator& observed, const std::string& observable_label,
                    const std::vector<double>& omega_grid, const TimeGrid& grid,
                    double delta_s, double epsilon, const SensorRunOptions& opts = {});

/// Same scan for a caller-supplied system generator and initial state.
TRPSMap sensor_trps_for_generator(const LindbladGenerator& system_gen,
                                  const DensityMatrix& rho0_system,
                                  const Operator& observed,
                                  const std::string& observable_label,
                                  const std::vector<double>& omega_grid,
                                  const TimeGrid& grid, double delta_s, double epsilon,
                                  double min_system_scale,
                                  const SensorRunOptions& opts = {});

}  // namespace trps
