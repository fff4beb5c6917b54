#include "trps/sensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "trps/errors.hpp"

namespace trps {

void SensorConfig::validate() const {
    if (!(linewidth > 0.0)) {
        throw DomainError("SensorConfig: linewidth must be positive");
    }
    if (epsilon < 0.0) {
        throw DomainError("SensorConfig: coupling must be nonnegative");
    }
}

void SensorConfig::warn_if_not_weak(double min_system_scale,
                                    std::vector<std::string>* warnings) const {
    if (!warnings) return;
    const double scale = std::min(min_system_scale, linewidth);
    if (epsilon > 1e-3 * scale) {
        warnings->push_back("sensor coupling epsilon=" + std::to_string(epsilon) +
                            " GHz is not weak against min(g, Gamma)=" +
                            std::to_string(scale) +
                            " GHz; spectra may be perturbed by back-action");
    }
}

Operator embed_with_sensor(const Operator& system_op) {
    const Eigen::Index d = system_op.rows();
    Operator out = Operator::Zero(d + 1, d + 1);
    out.topLeftCorner(d, d) = system_op;
    return out;
}

LindbladGenerator attach_sensor(const LindbladGenerator& gen, const Operator& observed,
                                const SensorConfig& cfg) {
    cfg.validate();
    const int d = gen.dim();
    if (observed.rows() != d || observed.cols() != d) {
        throw ShapeError("attach_sensor: observed operator does not act on the system space");
    }
    const int joint_dim = d + 1;
    const Operator zeta = lowering_operator(joint_dim, joint_dim - 1);
    const Operator observed_joint = embed_with_sensor(observed);

    // On the single-excitation space the products route through the
    // vacuum, so O^dag zeta + zeta^dag O is the exact hopping term.
    Operator sensor_terms = Operator::Zero(joint_dim, joint_dim);
    sensor_terms(joint_dim - 1, joint_dim - 1) = cfg.omega_k;
    const Operator hop = observed_joint.adjoint() * zeta;
    sensor_terms += cfg.epsilon * (hop + hop.adjoint());

    std::vector<std::pair<Operator, double>> dissipators;
    dissipators.reserve(gen.dissipators().size() + 1);
    for (const Dissipator& diss : gen.dissipators()) {
        dissipators.emplace_back(embed_with_sensor(diss.op), diss.rate);
    }
    dissipators.emplace_back(zeta, cfg.linewidth);

    if (gen.constant_hamiltonian()) {
        Operator h = embed_with_sensor(gen.constant_h()) + sensor_terms;
        return assemble_constant_generator(std::move(h), std::move(dissipators));
    }
    // Capture the system generator by value so the joint generator owns
    // its Hamiltonian even after the original goes out of scope.
    return assemble_generator(
        [system = gen, sensor_terms](double t) {
            return Operator(embed_with_sensor(system.hamiltonian_at(t)) + sensor_terms);
        },
        std::move(dissipators), joint_dim);
}

std::vector<double> sensor_population(const std::vector<DensityMatrix>& joint_series) {
    std::vector<double> out;
    out.reserve(joint_series.size());
    for (const DensityMatrix& rho : joint_series) {
        const Eigen::Index last = rho.rows() - 1;
        out.push_back(rho(last, last).real());
    }
    return out;
}

namespace {

std::vector<long> output_indices(long steps, int stride) {
    std::vector<long> idx;
    for (long i = 0; i <= steps; i += stride) idx.push_back(i);
    return idx;
}

}  // namespace

TRPSMap sensor_trps_for_generator(const LindbladGenerator& system_gen,
                                  const DensityMatrix& rho0_system,
                                  const Operator& observed,
                                  const std::string& observable_label,
                                  const std::vector<double>& omega_grid,
                                  const TimeGrid& grid, double delta_s, double epsilon,
                                  double min_system_scale, const SensorRunOptions& opts) {
    if (omega_grid.empty()) {
        throw DomainError("sensor_trps: empty frequency grid");
    }
    if (!(delta_s > 0.0) || !(epsilon > 0.0)) {
        throw DomainError("sensor_trps: delta_s and epsilon must be positive");
    }
    grid.validate();

    SensorConfig probe{0.0, delta_s, epsilon};
    probe.warn_if_not_weak(min_system_scale, opts.warnings);

    const long n_steps = grid.steps();
    const std::vector<long> rows = output_indices(n_steps, std::max(1, opts.output_stride));

    TRPSMap map;
    map.observable = observable_label;
    map.delta_s = delta_s;
    map.frequencies = omega_grid;
    map.times.reserve(rows.size());
    for (long idx : rows) map.times.push_back(grid.time_at(idx));
    map.raw_populations.setZero(static_cast<Eigen::Index>(rows.size()),
                                static_cast<Eigen::Index>(omega_grid.size()));

    const double norm = delta_s / (2.0 * epsilon * epsilon * M_PI);
    const int stride = std::max(1, opts.output_stride);
    std::atomic<std::uint64_t> step_count{0};

    auto run_one = [&](size_t k) {
        SensorConfig cfg{omega_grid[k], delta_s, epsilon};
        const LindbladGenerator joint = attach_sensor(system_gen, observed, cfg);
        const DensityMatrix rho0 = embed_with_sensor(rho0_system);
        const Eigen::Index sensor_idx = rho0.rows() - 1;
        PropagationOptions popts;
        popts.check_invariants = opts.check_invariants;
        try {
            propagate_observed(
                rho0, joint, grid,
                [&](long step, double, const DensityMatrix& rho) {
                    if (step % stride == 0) {
                        map.raw_populations(step / stride, static_cast<Eigen::Index>(k)) =
                            rho(sensor_idx, sensor_idx).real();
                    }
                },
                popts);
        } catch (const std::exception& err) {
            throw InvariantViolation("sensor_trps: propagation failed at omega_k=" +
                                     std::to_string(omega_grid[k]) + " GHz: " + err.what());
        }
        step_count += static_cast<std::uint64_t>(n_steps);
    };

    const int n_threads =
        std::max(1, std::min<int>(opts.threads, static_cast<int>(omega_grid.size())));
    if (n_threads == 1) {
        for (size_t k = 0; k < omega_grid.size(); ++k) run_one(k);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t k = next.fetch_add(1); k < omega_grid.size();
                         k = next.fetch_add(1)) {
                        run_one(k);
                    }
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

    if (opts.counters) opts.counters->propagation_steps += step_count.load();
    map.intensities = norm * map.raw_populations;
    if (!opts.keep_raw) map.raw_populations.resize(0, 0);
    return map;
}

TRPSMap sensor_trps(const DetuningSchedule& schedule, const ModelParams& params,
                    const Operator& observed, const std::string& observable_label,
                    const std::vector<double>& omega_grid, const TimeGrid& grid,
                    double delta_s, double epsilon, const SensorRunOptions& opts) {
    const LindbladGenerator gen = build_time_dependent_generator(schedule, params);
    const DensityMatrix rho0 = basis_state(basis::kSystemDim, basis::kEmitter);
    return sensor_trps_for_generator(gen, rho0, observed, observable_label, omega_grid,
                                     grid, delta_s, epsilon, params.g, opts);
}

}  // namespace trps
