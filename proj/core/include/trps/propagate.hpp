#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trps/lindblad.hpp"
#include "trps/operators.hpp"
#include "trps/time_grid.hpp"

namespace trps {

// State-validity bounds enforced during propagation.
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPositivityTol = 1e-8;

/// Throws InvariantViolation if rho is not a valid density matrix within
/// the bounds above (context is prefixed to the message).
void check_density_matrix(const DensityMatrix& rho, const std::string& context,
                          bool check_positivity = true);

struct PropagationOptions {
    bool check_invariants = true;
    /// Positivity needs an eigensolve, so it runs every this many steps
    /// (trace and hermiticity are checked at every step).
    long positivity_stride = 16;
    std::vector<std::string>* warnings = nullptr;
};

/// Classical fixed-step RK4 on the full density matrix (or any operator).
/// Each step integrates over [t, t+dt); the right-endpoint stage samples
/// H as a left limit so that piecewise-constant schedules whose jumps sit
/// on grid points are integrated exactly on both sides.
class Propagator {
public:
    explicit Propagator(const LindbladGenerator& gen);

    /// Advance state in place by one RK4 step from t.
    void step(Operator& state, double t, double dt);

    const LindbladGenerator& generator() const { return *gen_; }

private:
    const LindbladGenerator* gen_;
    Operator h_stage_;
    Operator k1_, k2_, k3_, k4_, stage_, scratch_;
};

/// Largest |eigenvalue| of H sampled at the given times (and of the
/// constant H for constant generators).
double hamiltonian_spectral_radius(const LindbladGenerator& gen,
                                   const std::vector<double>& sample_times);

/// Default step rule: dt = min(2*pi / omega_max, 1 / rate_max) / 50,
/// with the inapplicable bound dropped when there is no oscillation or
/// no dissipation.
double default_time_step(double omega_max, double rate_max);

/// Emits a warning (not an error) when dt exceeds the RK4 stability
/// estimate for the sampled generator.
void warn_if_step_unstable(const LindbladGenerator& gen, const TimeGrid& grid,
                           const std::vector<double>& sample_times,
                           std::vector<std::string>* warnings);

/// Propagates rho0 over the grid, returning all steps()+1 snapshots.
/// Deterministic for fixed inputs. dt <= 0 -> DomainError; invariant
/// breaches -> InvariantViolation when checks are enabled.
std::vector<DensityMatrix> propagate(const DensityMatrix& rho0,
                                     const LindbladGenerator& gen, const TimeGrid& grid,
                                     const PropagationOptions& opts = {});

/// Streaming variant: observer(step_index, t, rho) is called at every grid
/// point (including t0) without storing the trajectory.
void propagate_observed(const DensityMatrix& rho0, const LindbladGenerator& gen,
                        const TimeGrid& grid,
                        const std::function<void(long, double, const DensityMatrix&)>& observer,
                        const PropagationOptions& opts = {});

}  // namespace trps
