#pragma once

namespace trps {

/// Uniform time grid over [t0, t1] (ns). (t1 - t0) / dt must be a whole
/// number of steps within rounding tolerance.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;

    /// Number of steps (grid has steps()+1 points). Throws DomainError on
    /// invalid dt or a non-integral step count.
    long steps() const;

    double time_at(long index) const { return t0 + static_cast<double>(index) * dt; }

    void validate() const;

    /// Grid with exactly n steps over [t0, t1].
    static TimeGrid with_steps(double t0, double t1, long n);

    /// Grid whose step is the largest value <= dt_target dividing [t0, t1]
    /// into whole steps.
    static TimeGrid with_max_step(double t0, double t1, double dt_target);
};

}  // namespace trps
