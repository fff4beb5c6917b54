#include "trps/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "trps/errors.hpp"

namespace trps {

namespace {

Extremum refine(const std::vector<double>& xs, const std::vector<double>& ys, long i) {
    const double y0 = ys[static_cast<size_t>(i - 1)];
    const double y1 = ys[static_cast<size_t>(i)];
    const double y2 = ys[static_cast<size_t>(i + 1)];
    const double denom = y0 - 2.0 * y1 + y2;
    Extremum e{xs[static_cast<size_t>(i)], y1, i};
    if (denom != 0.0) {
        const double shift = 0.5 * (y0 - y2) / denom;
        const double h = xs[static_cast<size_t>(i + 1)] - xs[static_cast<size_t>(i)];
        e.x += shift * h;
        e.value = y1 - 0.25 * (y0 - y2) * shift;
    }
    return e;
}

template <typename Cmp>
std::vector<Extremum> extrema(const std::vector<double>& xs, const std::vector<double>& ys,
                              Cmp better) {
    if (xs.size() != ys.size()) {
        throw ShapeError("extrema: coordinate and value arrays differ in length");
    }
    std::vector<Extremum> out;
    for (long i = 1; i + 1 < static_cast<long>(ys.size()); ++i) {
        const double prev = ys[static_cast<size_t>(i - 1)];
        const double cur = ys[static_cast<size_t>(i)];
        const double next = ys[static_cast<size_t>(i + 1)];
        if (!better(cur, next)) continue;
        if (better(prev, cur)) continue;
        out.push_back(refine(xs, ys, i));
    }
    return out;
}

}  // namespace

std::vector<Extremum> local_minima(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
    return extrema(xs, ys, [](double a, double b) { return a < b; });
}

std::vector<Extremum> local_maxima(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
    return extrema(xs, ys, [](double a, double b) { return a > b; });
}

std::vector<Extremum> prominent_maxima(const std::vector<double>& xs,
                                       const std::vector<double>& ys,
                                       double min_relative_height) {
    const double top = *std::max_element(ys.begin(), ys.end());
    std::vector<Extremum> out;
    for (const Extremum& e : local_maxima(xs, ys)) {
        if (e.value >= min_relative_height * top) out.push_back(e);
    }
    return out;
}

double fit_exponential_decay_rate(const std::vector<double>& xs,
                                  const std::vector<double>& ys, double x_lo,
                                  double x_hi) {
    std::vector<double> t, logy;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < x_lo || xs[i] > x_hi) continue;
        if (!(ys[i] > 0.0)) {
            throw DomainError("fit_exponential_decay_rate: nonpositive sample in window");
        }
        t.push_back(xs[i]);
        logy.push_back(std::log(ys[i]));
    }
    if (t.size() < 2) {
        throw DomainError("fit_exponential_decay_rate: fewer than two samples in window");
    }
    return -fit_line(t, logy).slope;
}

std::optional<double> full_width_half_max(const std::vector<double>& xs,
                                          const std::vector<double>& ys) {
    if (xs.size() != ys.size() || ys.size() < 3) return std::nullopt;
    const auto it = std::max_element(ys.begin(), ys.end());
    const long peak = std::distance(ys.begin(), it);
    const double half = 0.5 * *it;

    auto cross = [&](long from, long step) -> std::optional<double> {
        for (long i = from; i + step >= 0 && i + step < static_cast<long>(ys.size());
             i += step) {
            const double a = ys[static_cast<size_t>(i)];
            const double b = ys[static_cast<size_t>(i + step)];
            if ((a >= half) != (b >= half)) {
                const double f = (half - a) / (b - a);
                return xs[static_cast<size_t>(i)] +
                       f * (xs[static_cast<size_t>(i + step)] - xs[static_cast<size_t>(i)]);
            }
        }
        return std::nullopt;
    };
    const auto left = cross(peak, -1);
    const auto right = cross(peak, +1);
    if (!left || !right) return std::nullopt;
    return *right - *left;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n != ys.size() || n < 2) {
        throw ShapeError("fit_line: need at least two matching samples");
    }
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw DomainError("fit_line: degenerate abscissa");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ss_res = 0;
        for (size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
            ss_res += r * r;
        }
        fit.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx);
    }
    return fit;
}

double trapezoid(const std::vector<double>& ys, double dx) {
    if (ys.size() < 2) return 0.0;
    double s = 0.5 * (ys.front() + ys.back());
    for (size_t i = 1; i + 1 < ys.size(); ++i) s += ys[i];
    return s * dx;
}

}  // namespace trps
