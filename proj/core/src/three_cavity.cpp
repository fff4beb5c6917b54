#include "trps/three_cavity.hpp"

#include <cmath>

#include "trps/errors.hpp"

namespace trps {

void ModelParams::validate() const {
    if (!(g > 0.0) || !(eta > 0.0)) {
        throw DomainError("ModelParams: couplings g and eta must be positive");
    }
    if (gamma < 0.0 || kappa < 0.0) {
        throw DomainError("ModelParams: decay rates must be nonnegative");
    }
}

void DetuningSchedule::validate() const {
    if (kind == Kind::GaussianFall && !(fall_width > 0.0)) {
        throw DomainError("DetuningSchedule: gaussian-fall needs fall_width > 0");
    }
}

DetuningSchedule DetuningSchedule::constant(double delta) {
    return DetuningSchedule{Kind::Constant, delta, delta, 0.0, 0.0};
}

DetuningSchedule DetuningSchedule::step(double delta_initial, double delta_final,
                                        double t_switch) {
    return DetuningSchedule{Kind::Step, delta_initial, delta_final, t_switch, 0.0};
}

DetuningSchedule DetuningSchedule::gaussian_fall(double delta_initial, double delta_final,
                                                 double t_switch, double fall_width) {
    DetuningSchedule s{Kind::GaussianFall, delta_initial, delta_final, t_switch, fall_width};
    s.validate();
    return s;
}

double evaluate_schedule(const DetuningSchedule& s, double t) {
    switch (s.kind) {
        case DetuningSchedule::Kind::Constant:
            return s.delta_initial;
        case DetuningSchedule::Kind::Step:
            return t < s.t_switch ? s.delta_initial : s.delta_final;
        case DetuningSchedule::Kind::GaussianFall: {
            if (t < s.t_switch) return s.delta_initial;
            const double u = (t - s.t_switch) / s.fall_width;
            return s.delta_final + (s.delta_initial - s.delta_final) * std::exp(-0.5 * u * u);
        }
    }
    throw DomainError("DetuningSchedule: unknown kind");
}

Operator hamiltonian(double delta, const ModelParams& p) {
    p.validate();
    using namespace basis;
    Operator h = Operator::Zero(kSystemDim, kSystemDim);
    h(kEmitter, kEmitter) = p.omega0;
    h(kLeft, kLeft) = p.omega0 + delta;
    h(kMiddle, kMiddle) = p.omega0;
    h(kRight, kRight) = p.omega0 - delta;
    h(kEmitter, kMiddle) = h(kMiddle, kEmitter) = p.g;
    h(kLeft, kMiddle) = h(kMiddle, kLeft) = p.eta;
    h(kMiddle, kRight) = h(kRight, kMiddle) = p.eta;
    return h;
}

SupermodeSet supermodes(double delta, double eta, double omega0) {
    if (!(eta > 0.0)) {
        throw DomainError("supermodes: eta must be positive");
    }
    const double root = std::sqrt(delta * delta + 2.0 * eta * eta);
    const double x = delta / eta;

    SupermodeSet s;
    s.frequencies = {omega0 - root, omega0, omega0 + root};

    Eigen::Vector3d v0(-1.0, x, 1.0);
    v0 /= std::sqrt(2.0 + x * x);

    const double eta2 = eta * eta;
    const double eta4 = eta2 * eta2;
    s.l_minus = std::sqrt(2.0) *
                std::sqrt((delta * delta + 2.0 * eta2) *
                          (delta * delta + eta2 - delta * root) / eta4);
    s.l_plus = std::sqrt(2.0) *
               std::sqrt((delta * delta + 2.0 * eta2) *
                         (delta * delta + eta2 + delta * root) / eta4);

    Eigen::Vector3d vm((-delta * root + delta * delta + eta2) / eta2, (-root + delta) / eta,
                       1.0);
    vm /= s.l_minus;
    Eigen::Vector3d vp((delta * root + delta * delta + eta2) / eta2, (root + delta) / eta,
                       1.0);
    vp /= s.l_plus;

    s.vectors = {vm, v0, vp};
    return s;
}

double effective_coupling(double delta, double eta, double g) {
    if (!(eta > 0.0)) {
        throw DomainError("effective_coupling: eta must be positive");
    }
    const double x = delta / eta;
    return g * (x / std::sqrt(2.0 + x * x));
}

Operator diagonalized_hamiltonian(double delta, const ModelParams& p) {
    p.validate();
    const SupermodeSet s = supermodes(delta, p.eta, p.omega0);
    Operator h = Operator::Zero(4, 4);
    h(0, 0) = p.omega0;
    for (int m = 0; m < 3; ++m) {
        h(m + 1, m + 1) = s.frequencies[static_cast<size_t>(m)];
        const double coupling = p.g * s.vectors[static_cast<size_t>(m)](1);
        h(0, m + 1) = coupling;
        h(m + 1, 0) = coupling;
    }
    return h;
}

Operator emitter_lowering() { return lowering_operator(basis::kSystemDim, basis::kEmitter); }

Operator cavity_lowering(int which) {
    if (which != basis::kLeft && which != basis::kMiddle && which != basis::kRight) {
        throw DomainError("cavity_lowering: expected a cavity basis index");
    }
    return lowering_operator(basis::kSystemDim, which);
}

LindbladGenerator build_time_dependent_generator(const DetuningSchedule& s,
                                                 const ModelParams& p) {
    p.validate();
    s.validate();
    std::vector<std::pair<Operator, double>> dissipators;
    dissipators.emplace_back(emitter_lowering(), p.gamma);
    dissipators.emplace_back(cavity_lowering(basis::kLeft), p.kappa);
    dissipators.emplace_back(cavity_lowering(basis::kMiddle), p.kappa);
    dissipators.emplace_back(cavity_lowering(basis::kRight), p.kappa);
    if (s.kind == DetuningSchedule::Kind::Constant) {
        return assemble_constant_generator(hamiltonian(s.delta_initial, p),
                                           std::move(dissipators));
    }
    return assemble_generator(
        [s, p](double t) { return hamiltonian(evaluate_schedule(s, t), p); },
        std::move(dissipators), basis::kSystemDim);
}

}  // namespace trps
