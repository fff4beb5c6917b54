#pragma once

#include <array>
#include <string>

#include "trps/lindblad.hpp"
#include "trps/operators.hpp"

namespace trps {

/// Basis ordering of the single-excitation space
/// {|vac>, |e>, |1_a>, |1_b>, |1_c>}: emitter, left, middle, right.
namespace basis {
inline constexpr int kVacuum = 0;
inline constexpr int kEmitter = 1;
inline constexpr int kLeft = 2;
inline constexpr int kMiddle = 3;
inline constexpr int kRight = 4;
inline constexpr int kSystemDim = 5;
}  // namespace basis

/// Emitter/three-cavity model parameters (angular GHz).
struct ModelParams {
    double g = 50.0;       // emitter <-> middle cavity
    double eta = 400.0;    // middle <-> lateral cavities
    double gamma = 1.0;    // emitter energy decay
    double kappa = 20.0;   // per-cavity energy decay
    double omega0 = 0.0;   // common resonance; 0 in the rotating frame

    void validate() const;
};

/// Eigensystem of the coupled three-cavity block at a fixed detuning.
/// Frequencies are ordered (omega_minus, omega0, omega_plus); vectors are
/// unit-norm with a positive third (right-cavity) component.
struct SupermodeSet {
    std::array<double, 3> frequencies{};
    std::array<Eigen::Vector3d, 3> vectors{};
    double l_minus = 0.0;  // closed-form normalizers of the shifted modes
    double l_plus = 0.0;
};

/// Time profile of the lateral-cavity detuning Delta(t).
struct DetuningSchedule {
    enum class Kind { Constant, Step, GaussianFall };

    Kind kind = Kind::Constant;
    double delta_initial = 0.0;  // GHz
    double delta_final = 0.0;    // GHz
    double t_switch = 0.0;       // ns
    double fall_width = 0.0;     // ns; Gaussian sigma of the fall profile

    void validate() const;

    static DetuningSchedule constant(double delta);
    static DetuningSchedule step(double delta_initial, double delta_final, double t_switch);
    static DetuningSchedule gaussian_fall(double delta_initial, double delta_final,
                                          double t_switch, double fall_width);
};

/// Delta(t). Step schedules are right-continuous at t_switch; the
/// Gaussian fall holds delta_initial before t_switch and then relaxes as
/// delta_final + (delta_initial - delta_final) exp(-(t-t_switch)^2 / (2 sigma^2)).
double evaluate_schedule(const DetuningSchedule& s, double t);

/// 5x5 single-excitation Hamiltonian: vacuum row/column zero; excited
/// block has diagonal (omega0, omega0+Delta, omega0, omega0-Delta) for
/// (e, a, b, c) and couplings g (e-b) and eta (a-b, b-c).
Operator hamiltonian(double delta, const ModelParams& p);

/// Closed-form eigensystem of the cavity block: frequencies
/// omega0 +- sqrt(Delta^2 + 2 eta^2) around the pinned central mode.
SupermodeSet supermodes(double delta, double eta, double omega0 = 0.0);

/// Emitter coupling to the central supermode,
/// g_eff = g (Delta/eta) / sqrt(2 + (Delta/eta)^2); odd in Delta.
double effective_coupling(double delta, double eta, double g);

/// 4x4 Hamiltonian on {e, v-, v0, v+}: diagonal (omega0, omega-, omega0,
/// omega+) with first row/column g * (second component of each supermode).
Operator diagonalized_hamiltonian(double delta, const ModelParams& p);

/// Lowering operators (sigma, a, b, c) on the 5-dimensional space.
Operator emitter_lowering();
Operator cavity_lowering(int which);  // basis::kLeft / kMiddle / kRight

/// Full time-dependent generator: H(evaluate_schedule(s, t), p) with
/// dissipators (sigma, gamma) and (a|b|c, kappa).
LindbladGenerator build_time_dependent_generator(const DetuningSchedule& s,
                                                 const ModelParams& p);

}  // namespace trps
