#pragma once

#include <optional>
#include <vector>

namespace trps {

/// A refined local extremum of a sampled curve.
struct Extremum {
    double x = 0.0;
    double value = 0.0;
    long index = 0;  // grid index the refinement started from
};

/// Interior local minima/maxima with 3-point parabolic refinement.
/// Plateau edges count once (<= on the left neighbour, < on the right).
std::vector<Extremum> local_minima(const std::vector<double>& xs,
                                   const std::vector<double>& ys);
std::vector<Extremum> local_maxima(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

/// Maxima whose height exceeds min_relative_height * max(ys).
std::vector<Extremum> prominent_maxima(const std::vector<double>& xs,
                                       const std::vector<double>& ys,
                                       double min_relative_height);

/// Least-squares slope of log(y) over [x_lo, x_hi]; y must stay positive
/// there. Returns the decay rate (negated slope).
double fit_exponential_decay_rate(const std::vector<double>& xs,
                                  const std::vector<double>& ys, double x_lo, double x_hi);

/// Full width at half maximum of the tallest feature, by linear
/// interpolation of the half-height crossings around the global maximum.
std::optional<double> full_width_half_max(const std::vector<double>& xs,
                                          const std::vector<double>& ys);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Ordinary least squares y = a x + b with the slope's standard error.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Trapezoidal integral of uniformly sampled values.
double trapezoid(const std::vector<double>& ys, double dx);

}  // namespace trps
