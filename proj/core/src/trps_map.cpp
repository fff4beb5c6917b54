#include "trps/trps_map.hpp"

#include "trps/errors.hpp"

namespace trps {

namespace {

void require_increasing(const std::vector<double>& v, const char* what) {
    for (size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) {
            throw DomainError(std::string("TRPSMap: ") + what + " grid is not strictly increasing");
        }
    }
}

}  // namespace

void TRPSMap::validate(double noise_floor) const {
    require_increasing(times, "time");
    require_increasing(frequencies, "frequency");
    if (intensities.rows() != static_cast<Eigen::Index>(times.size()) ||
        intensities.cols() != static_cast<Eigen::Index>(frequencies.size())) {
        throw ShapeError("TRPSMap: intensity grid does not match the axes");
    }
    if (intensities.size() > 0 && intensities.minCoeff() < -noise_floor) {
        throw InvariantViolation("TRPSMap: intensity below the nonnegativity noise floor");
    }
}

std::vector<double> TRPSMap::time_integrated() const {
    std::vector<double> out(frequencies.size(), 0.0);
    if (times.size() < 2) return out;
    for (Eigen::Index k = 0; k < intensities.cols(); ++k) {
        double acc = 0.0;
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            const double dt = times[i + 1] - times[i];
            acc += 0.5 * dt *
                   (intensities(static_cast<Eigen::Index>(i), k) +
                    intensities(static_cast<Eigen::Index>(i + 1), k));
        }
        out[static_cast<size_t>(k)] = acc;
    }
    return out;
}

std::vector<double> TRPSMap::frequency_integrated() const {
    std::vector<double> out(times.size(), 0.0);
    if (frequencies.size() < 2) return out;
    for (Eigen::Index i = 0; i < intensities.rows(); ++i) {
        double acc = 0.0;
        for (size_t k = 0; k + 1 < frequencies.size(); ++k) {
            const double dw = frequencies[k + 1] - frequencies[k];
            acc += 0.5 * dw *
                   (intensities(i, static_cast<Eigen::Index>(k)) +
                    intensities(i, static_cast<Eigen::Index>(k + 1)));
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

}  // namespace trps
