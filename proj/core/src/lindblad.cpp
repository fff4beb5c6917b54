#include "trps/lindblad.hpp"

#include <algorithm>

#include "trps/errors.hpp"

namespace trps {

namespace {

std::vector<Dissipator> prepare_dissipators(
    std::vector<std::pair<Operator, double>>&& raw, int dim) {
    std::vector<Dissipator> out;
    out.reserve(raw.size());
    for (auto& [op, rate] : raw) {
        if (op.rows() != dim || op.cols() != dim) {
            throw ShapeError("assemble_generator: collapse operator is not " +
                             std::to_string(dim) + "x" + std::to_string(dim));
        }
        if (rate < 0.0) {
            throw DomainError("assemble_generator: negative dissipator rate");
        }
        Operator dag_op = op.adjoint() * op;
        out.push_back(Dissipator{std::move(op), rate, std::move(dag_op)});
    }
    return out;
}

}  // namespace

void LindbladGenerator::apply(const Operator& hamiltonian, const Operator& state,
                              Operator& out, Operator& scratch) const {
    const Complex minus_i(0.0, -1.0);
    scratch.noalias() = hamiltonian * state;
    out = scratch;
    scratch.noalias() = state * hamiltonian;
    out -= scratch;
    out *= minus_i;
    for (const Dissipator& d : dissipators_) {
        if (d.rate == 0.0) continue;
        scratch.noalias() = d.op * state;
        out.noalias() += d.rate * (scratch * d.op.adjoint());
        scratch.noalias() = d.op_dag_op * state;
        out.noalias() -= (0.5 * d.rate) * scratch;
        scratch.noalias() = state * d.op_dag_op;
        out.noalias() -= (0.5 * d.rate) * scratch;
    }
}

double LindbladGenerator::max_rate() const {
    double r = 0.0;
    for (const Dissipator& d : dissipators_) r = std::max(r, d.rate);
    return r;
}

LindbladGenerator assemble_generator(LindbladGenerator::HamiltonianFn hamiltonian_fn,
                                     std::vector<std::pair<Operator, double>> dissipators,
                                     int dim) {
    if (dim < 1) {
        throw DomainError("assemble_generator: dimension must be positive");
    }
    if (!hamiltonian_fn) {
        throw DomainError("assemble_generator: missing Hamiltonian function");
    }
    LindbladGenerator gen;
    gen.dim_ = dim;
    gen.constant_ = false;
    gen.hamiltonian_fn_ = std::move(hamiltonian_fn);
    gen.dissipators_ = prepare_dissipators(std::move(dissipators), dim);
    return gen;
}

LindbladGenerator assemble_constant_generator(
    Operator hamiltonian, std::vector<std::pair<Operator, double>> dissipators) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 1) {
        throw ShapeError("assemble_generator: Hamiltonian must be square");
    }
    const int dim = static_cast<int>(hamiltonian.rows());
    LindbladGenerator gen;
    gen.dim_ = dim;
    gen.constant_ = true;
    gen.constant_h_ = std::move(hamiltonian);
    gen.dissipators_ = prepare_dissipators(std::move(dissipators), dim);
    return gen;
}

}  // namespace trps
