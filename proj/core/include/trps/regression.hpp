#pragma once

#include <string>
#include <vector>

#include "trps/lindblad.hpp"
#include "trps/operators.hpp"
#include "trps/time_grid.hpp"
#include "trps/trps_map.hpp"
#include "trps/work_counters.hpp"

namespace trps {

/// Two-time correlator C(t', tau) = <O^dag(t') O(t' - tau)> sampled on the
/// propagation grid (t' rows, tau columns, shared step dt). Cells with
/// tau > t' - t0 are out of domain: the earlier-time argument would
/// precede the initial state. They are stored as exact zeros and carry no
/// weight in the spectrum integrals.
struct CorrelatorGrid {
    using Values = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    double t0 = 0.0;
    double dt = 0.0;
    Values values;  // rows: t' index (0..Nt), cols: tau index (0..Ntau)

    long time_points() const { return values.rows(); }
    long delay_points() const { return values.cols(); }
    double time_at(long i) const { return t0 + static_cast<double>(i) * dt; }
    double delay_at(long j) const { return static_cast<double>(j) * dt; }
    bool in_domain(long i, long j) const { return j <= i; }
};

struct CorrelatorOptions {
    int threads = 1;
    WorkCounters* counters = nullptr;
};

/// Quantum-regression evaluation: one forward pass caches rho(s); each
/// start time s seeds X = O rho(s), which is propagated with the same
/// (time-dependent) generator while tracing against O^dag. Cost scales as
/// O(N_t * N_tau) propagation steps.
CorrelatorGrid two_time_correlator(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                   const Operator& observed, const TimeGrid& grid,
                                   double tau_max, const CorrelatorOptions& opts = {});

struct AnalyticTrpsOptions {
    int output_stride = 8;
    int threads = 1;
    WorkCounters* counters = nullptr;
    std::vector<std::string>* warnings = nullptr;
};

/// Direct double time integral of the filtered spectrum,
///   S(omega, t) = (delta_s/pi) int_{t0}^{t} dt' e^{-delta_s (t-t')}
///                 Re int_0^{tau_max} dtau e^{-delta_s tau/2 - i omega tau}
///                 C(t', tau),
/// by trapezoidal quadrature on both axes. The lower limit -infty is
/// replaced by t0: nothing is excited earlier, so the discarded tail is
/// exactly zero. Emits a resolution warning when tau_max < 10 / delta_s.
TRPSMap analytic_trps(const CorrelatorGrid& corr, const std::vector<double>& omega_grid,
                      double delta_s, const std::string& observable_label,
                      const AnalyticTrpsOptions& opts = {});

/// Delay-integration horizon used by the presets: the filter kernel has
/// decayed below e^-5 plus one Rabi period of margin.
double default_tau_max(double delta_s, double rabi_period);

}  // namespace trps
