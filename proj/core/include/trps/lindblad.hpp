#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "trps/operators.hpp"

namespace trps {

/// One decay channel: collapse operator with a nonnegative rate (GHz).
/// The rate multiplies the full dissipator, i.e. populations decay as
/// exp(-rate * t) for a bare mode (energy-decay convention).
struct Dissipator {
    Operator op;
    double rate = 0.0;
    Operator op_dag_op;  // cached op^dag * op
};

/// Generator of a (possibly time-dependent) Lindblad master equation,
///   d rho / dt = -i [H(t), rho] + sum_j r_j (C_j rho C_j^dag
///                 - 1/2 {C_j^dag C_j, rho}).
/// Immutable after construction; safe to share across threads read-only.
class LindbladGenerator {
public:
    using HamiltonianFn = std::function<Operator(double)>;

    LindbladGenerator() = default;

    int dim() const { return dim_; }
    bool constant_hamiltonian() const { return constant_; }
    const std::vector<Dissipator>& dissipators() const { return dissipators_; }

    /// Cached Hamiltonian; only valid when constant_hamiltonian().
    const Operator& constant_h() const { return constant_h_; }

    /// H(t) by value; thread-safe for shared generators.
    Operator hamiltonian_at(double t) const {
        return constant_ ? constant_h_ : hamiltonian_fn_(t);
    }

    /// Generator action on state written into out. Valid for arbitrary
    /// operators, not only density matrices. scratch must match dims.
    void apply(const Operator& hamiltonian, const Operator& state, Operator& out,
               Operator& scratch) const;

    double max_rate() const;

    friend LindbladGenerator assemble_generator(
        LindbladGenerator::HamiltonianFn hamiltonian_fn,
        std::vector<std::pair<Operator, double>> dissipators, int dim);
    friend LindbladGenerator assemble_constant_generator(
        Operator hamiltonian, std::vector<std::pair<Operator, double>> dissipators);

private:
    int dim_ = 0;
    bool constant_ = false;
    HamiltonianFn hamiltonian_fn_;
    Operator constant_h_;
    std::vector<Dissipator> dissipators_;
};

/// Builds a generator from a Hamiltonian function and (operator, rate)
/// pairs. All operators must be dim x dim; rates must be >= 0.
LindbladGenerator assemble_generator(LindbladGenerator::HamiltonianFn hamiltonian_fn,
                                     std::vector<std::pair<Operator, double>> dissipators,
                                     int dim);

/// Same with a fixed Hamiltonian; enables the constant fast path.
LindbladGenerator assemble_constant_generator(
    Operator hamiltonian, std::vector<std::pair<Operator, double>> dissipators);

}  // namespace trps
