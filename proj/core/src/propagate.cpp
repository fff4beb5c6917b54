#include "trps/propagate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "trps/errors.hpp"

namespace trps {

namespace {

// Right-endpoint stages sample H just inside the step, giving the left
// limit at discontinuities aligned to grid points.
constexpr double kLeftLimitShift = 1e-9;

}  // namespace

void check_density_matrix(const DensityMatrix& rho, const std::string& context,
                          bool check_positivity) {
    const double trace_dev = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_dev > kTraceTol) {
        throw InvariantViolation(context + ": trace deviates from 1 by " +
                                 std::to_string(trace_dev));
    }
    const double herm = hermiticity_defect(rho);
    if (herm > kHermiticityTol) {
        throw InvariantViolation(context + ": hermiticity defect " + std::to_string(herm));
    }
    if (check_positivity) {
        Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho + rho.adjoint()),
                                                   Eigen::EigenvaluesOnly);
        const double lambda_min = es.eigenvalues().minCoeff();
        if (lambda_min < -kPositivityTol) {
            throw InvariantViolation(context + ": negative eigenvalue " +
                                     std::to_string(lambda_min));
        }
    }
}

Propagator::Propagator(const LindbladGenerator& gen) : gen_(&gen) {
    const int d = gen.dim();
    h_stage_.resize(d, d);
    k1_.resize(d, d);
    k2_.resize(d, d);
    k3_.resize(d, d);
    k4_.resize(d, d);
    stage_.resize(d, d);
    scratch_.resize(d, d);
}

void Propagator::step(Operator& state, double t, double dt) {
    const bool constant = gen_->constant_hamiltonian();
    const Operator& h1 = constant ? gen_->constant_h() : (h_stage_ = gen_->hamiltonian_at(t), h_stage_);
    gen_->apply(h1, state, k1_, scratch_);

    const Operator& h2 =
        constant ? gen_->constant_h() : (h_stage_ = gen_->hamiltonian_at(t + 0.5 * dt), h_stage_);
    stage_ = state + (0.5 * dt) * k1_;
    gen_->apply(h2, stage_, k2_, scratch_);
    stage_ = state + (0.5 * dt) * k2_;
    gen_->apply(h2, stage_, k3_, scratch_);

    const Operator& h4 =
        constant ? gen_->constant_h()
                 : (h_stage_ = gen_->hamiltonian_at(t + dt * (1.0 - kLeftLimitShift)), h_stage_);
    stage_ = state + dt * k3_;
    gen_->apply(h4, stage_, k4_, scratch_);

    state += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

double hamiltonian_spectral_radius(const LindbladGenerator& gen,
                                   const std::vector<double>& sample_times) {
    double radius = 0.0;
    auto account = [&radius](const Operator& h) {
        Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
        radius = std::max(radius, es.eigenvalues().cwiseAbs().maxCoeff());
    };
    if (gen.constant_hamiltonian()) {
        account(gen.constant_h());
        return radius;
    }
    for (double t : sample_times) account(gen.hamiltonian_at(t));
    return radius;
}

double default_time_step(double omega_max, double rate_max) {
    double bound = std::numeric_limits<double>::infinity();
    if (omega_max > 0.0) bound = std::min(bound, 2.0 * M_PI / omega_max);
    if (rate_max > 0.0) bound = std::min(bound, 1.0 / rate_max);
    if (!std::isfinite(bound)) return 1e-3;  // free evolution of a flat generator
    return bound / 50.0;
}

void warn_if_step_unstable(const LindbladGenerator& gen, const TimeGrid& grid,
                           const std::vector<double>& sample_times,
                           std::vector<std::string>* warnings) {
    if (!warnings) return;
    const double omega = hamiltonian_spectral_radius(gen, sample_times);
    // Liouvillian spectrum reaches ~2*omega_max on the imaginary axis plus
    // the decay rates; classical RK4 is stable out to |z| ~ 2.8 there.
    const double stiffness = 2.0 * omega + gen.max_rate();
    if (stiffness * grid.dt > 2.8) {
        warnings->push_back("propagate: dt=" + std::to_string(grid.dt) +
                            " ns exceeds the RK4 stability estimate " +
                            std::to_string(2.8 / stiffness) + " ns; result may be inaccurate");
    }
}

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0,
                                     const LindbladGenerator& gen, const TimeGrid& grid,
                                     const PropagationOptions& opts) {
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<size_t>(grid.steps()) + 1);
    propagate_observed(
        rho0, gen, grid,
        [&out](long, double, const DensityMatrix& rho) { out.push_back(rho); }, opts);
    return out;
}

void propagate_observed(const DensityMatrix& rho0, const LindbladGenerator& gen,
                        const TimeGrid& grid,
                        const std::function<void(long, double, const DensityMatrix&)>& observer,
                        const PropagationOptions& opts) {
    const long n = grid.steps();
    if (rho0.rows() != gen.dim() || rho0.cols() != gen.dim()) {
        throw ShapeError("propagate: initial state does not match the generator dimension");
    }
    if (opts.check_invariants) {
        check_density_matrix(rho0, "propagate: initial state");
    }
    warn_if_step_unstable(gen, grid,
                          {grid.t0, 0.5 * (grid.t0 + grid.t1), grid.t1 * (1.0 - 1e-12)},
                          opts.warnings);

    Propagator prop(gen);
    DensityMatrix rho = rho0;
    observer(0, grid.t0, rho);
    for (long i = 0; i < n; ++i) {
        prop.step(rho, grid.time_at(i), grid.dt);
        if (opts.check_invariants) {
            const bool do_positivity =
                opts.positivity_stride > 0 &&
                ((i + 1) % opts.positivity_stride == 0 || i + 1 == n);
            check_density_matrix(rho, "propagate: step " + std::to_string(i + 1),
                                 do_positivity);
        }
        observer(i + 1, grid.time_at(i + 1), rho);
    }
}

}  // namespace trps
