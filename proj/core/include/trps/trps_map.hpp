#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace trps {

/// Time-resolved physical spectrum of one observed operator at one
/// spectral resolution: intensities S(omega, t, delta_s) on a rectangular
/// (observation time, frequency) grid. Frequencies are relative to the
/// rotating-frame origin omega0.
struct TRPSMap {
    std::string observable;            // "sigma", "a", "b", "c" or a custom label
    double delta_s = 0.0;              // spectral resolution (GHz)
    std::vector<double> times;         // ns, strictly increasing
    std::vector<double> frequencies;   // GHz, strictly increasing
    Eigen::MatrixXd intensities;       // rows: times, cols: frequencies
    Eigen::MatrixXd raw_populations;   // sensor method only: unnormalized <n_k(t)>

    /// Checks grid monotonicity and the nonnegativity noise floor.
    void validate(double noise_floor = 1e-12) const;

    /// Integral over time per frequency (trapezoid on the stored grid).
    std::vector<double> time_integrated() const;

    /// Integral over frequency per time (trapezoid on the stored grid).
    std::vector<double> frequency_integrated() const;

    double max_intensity() const {
        return intensities.size() > 0 ? intensities.maxCoeff() : 0.0;
    }
};

}  // namespace trps
