#include "trps/regression.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>

#include "trps/errors.hpp"
#include "trps/propagate.hpp"

namespace trps {

namespace {

template <typename Fn>
void parallel_for(long count, int threads, Fn&& body) {
    if (count <= 0) return;
    const int n_threads =
        std::max(1, std::min(threads, static_cast<int>(std::min<long>(count, 1024))));
    if (n_threads == 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace

CorrelatorGrid two_time_correlator(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                   const Operator& observed, const TimeGrid& grid,
                                   double tau_max, const CorrelatorOptions& opts) {
    if (observed.rows() != gen.dim() || observed.cols() != gen.dim()) {
        throw ShapeError("two_time_correlator: observed operator dimension mismatch");
    }
    if (!(tau_max > 0.0)) {
        throw DomainError("two_time_correlator: tau_max must be positive");
    }
    const long n_steps = grid.steps();
    const long n_tau = std::min(n_steps, std::lround(tau_max / grid.dt));

    const std::vector<DensityMatrix> rho_series = propagate(rho0, gen, grid);

    CorrelatorGrid corr;
    corr.t0 = grid.t0;
    corr.dt = grid.dt;
    corr.values.setZero(n_steps + 1, n_tau + 1);

    const Operator observed_conj = observed.conjugate();
    std::atomic<std::uint64_t> step_count{static_cast<std::uint64_t>(n_steps)};

    // Row s: X(tau) = Lambda_{s -> s+tau}(O rho(s)), traced against O^dag.
    parallel_for(n_steps + 1, opts.threads, [&](long s) {
        Propagator prop(gen);
        Operator x = observed * rho_series[static_cast<size_t>(s)];
        const long row_steps = std::min(n_tau, n_steps - s);
        for (long j = 0;; ++j) {
            corr.values(s + j, j) = observed_conj.cwiseProduct(x).sum();
            if (j == row_steps) break;
            prop.step(x, grid.time_at(s + j), grid.dt);
        }
        step_count += static_cast<std::uint64_t>(row_steps);
    });

    if (opts.counters) opts.counters->propagation_steps += step_count.load();
    return corr;
}

TRPSMap analytic_trps(const CorrelatorGrid& corr, const std::vector<double>& omega_grid,
                      double delta_s, const std::string& observable_label,
                      const AnalyticTrpsOptions& opts) {
    if (omega_grid.empty()) {
        throw DomainError("analytic_trps: empty frequency grid");
    }
    if (!(delta_s > 0.0)) {
        throw DomainError("analytic_trps: delta_s must be positive");
    }
    const long n_time = corr.time_points() - 1;  // steps
    const long n_tau = corr.delay_points() - 1;
    const double dt = corr.dt;
    const double tau_horizon = static_cast<double>(n_tau) * dt;
    if (opts.warnings && tau_horizon < 10.0 / delta_s) {
        opts.warnings->push_back(
            "analytic_trps: delay horizon " + std::to_string(tau_horizon) +
            " ns is short for delta_s=" + std::to_string(delta_s) +
            " GHz (kernel not yet decayed below e^-5); spectrum may be truncated");
    }

    const int stride = std::max(1, opts.output_stride);
    std::vector<long> rows;
    for (long i = 0; i <= n_time; i += stride) rows.push_back(i);

    TRPSMap map;
    map.observable = observable_label;
    map.delta_s = delta_s;
    map.frequencies = omega_grid;
    map.times.reserve(rows.size());
    for (long i : rows) map.times.push_back(corr.time_at(i));
    map.intensities.setZero(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(omega_grid.size()));

    // Fixed delay kernel; the trapezoid half-weights at tau = 0 and at the
    // per-row domain edge are applied as endpoint corrections.
    std::vector<double> kernel(static_cast<size_t>(n_tau) + 1);
    for (long j = 0; j <= n_tau; ++j) {
        kernel[static_cast<size_t>(j)] = std::exp(-0.5 * delta_s * corr.delay_at(j)) * dt;
    }
    const double outer_decay = std::exp(-delta_s * dt);
    std::atomic<std::uint64_t> eval_count{0};

    parallel_for(static_cast<long>(omega_grid.size()), opts.threads, [&](long k) {
        const double omega = omega_grid[static_cast<size_t>(k)];
        const Complex rot = std::polar(1.0, -omega * dt);
        std::uint64_t evals = 0;

        std::vector<double> inner(static_cast<size_t>(n_time) + 1);
        for (long i = 0; i <= n_time; ++i) {
            Complex phase(1.0, 0.0);
            Complex acc(0.0, 0.0);
            const auto& row = corr.values;
            for (long j = 0; j <= n_tau; ++j) {
                acc += kernel[static_cast<size_t>(j)] * phase * row(i, j);
                phase *= rot;
                if ((j & 255) == 255) phase = std::polar(1.0, -omega * corr.delay_at(j + 1));
            }
            evals += static_cast<std::uint64_t>(n_tau) + 1;
            const long edge = std::min(i, n_tau);
            acc -= 0.5 * kernel[0] * row(i, 0);
            acc -= 0.5 * kernel[static_cast<size_t>(edge)] *
                   std::polar(1.0, -omega * corr.delay_at(edge)) * row(i, edge);
            inner[static_cast<size_t>(i)] = acc.real();
        }

        // Exponentially gated outer integral as a running discounted sum.
        double running = 0.0;
        double first_weight = 1.0;
        size_t out_row = 0;
        for (long i = 0; i <= n_time; ++i) {
            if (i == 0) {
                running = inner[0];
            } else {
                running = running * outer_decay + inner[static_cast<size_t>(i)];
                first_weight *= outer_decay;
            }
            if (i % stride == 0) {
                const double value =
                    delta_s / M_PI * dt *
                    (running - 0.5 * inner[static_cast<size_t>(i)] -
                     0.5 * first_weight * inner[0]);
                map.intensities(static_cast<Eigen::Index>(out_row++),
                                static_cast<Eigen::Index>(k)) = value;
            }
        }
        eval_count += evals;
    });

    if (opts.counters) opts.counters->quadrature_evals += eval_count.load();
    return map;
}

double default_tau_max(double delta_s, double rabi_period) {
    return 10.0 / delta_s + rabi_period;
}

}  // namespace trps
