#include "trps/time_grid.hpp"

#include <cmath>

#include "trps/errors.hpp"

namespace trps {

long TimeGrid::steps() const {
    validate();
    return std::lround((t1 - t0) / dt);
}

void TimeGrid::validate() const {
    if (!(dt > 0.0)) {
        throw DomainError("TimeGrid: dt must be positive");
    }
    if (!(t1 > t0)) {
        throw DomainError("TimeGrid: t1 must exceed t0");
    }
    const double ratio = (t1 - t0) / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw DomainError("TimeGrid: (t1 - t0) / dt is not a whole number of steps");
    }
}

TimeGrid TimeGrid::with_steps(double t0, double t1, long n) {
    if (n < 1) {
        throw DomainError("TimeGrid: step count must be >= 1");
    }
    return TimeGrid{t0, t1, (t1 - t0) / static_cast<double>(n)};
}

TimeGrid TimeGrid::with_max_step(double t0, double t1, double dt_target) {
    if (!(dt_target > 0.0) || !(t1 > t0)) {
        throw DomainError("TimeGrid: invalid span or target step");
    }
    const long n = static_cast<long>(std::ceil((t1 - t0) / dt_target - 1e-12));
    return with_steps(t0, t1, std::max(1L, n));
}

}  // namespace trps
