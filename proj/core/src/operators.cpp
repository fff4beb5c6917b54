#include "trps/operators.hpp"

#include "trps/errors.hpp"

namespace trps {

std::vector<Operator> ladder_operators(int mode_count) {
    if (mode_count < 1) {
        throw DomainError("ladder_operators: mode_count must be >= 1");
    }
    const int dim = mode_count + 1;
    std::vector<Operator> ops;
    ops.reserve(mode_count);
    for (int j = 1; j <= mode_count; ++j) {
        ops.push_back(lowering_operator(dim, j));
    }
    return ops;
}

Operator lowering_operator(int dim, int mode_index) {
    if (dim < 2 || mode_index < 1 || mode_index >= dim) {
        throw DomainError("lowering_operator: mode index out of range");
    }
    Operator op = Operator::Zero(dim, dim);
    op(0, mode_index) = 1.0;
    return op;
}

DensityMatrix basis_state(int dim, int index) {
    if (index < 0 || index >= dim) {
        throw DomainError("basis_state: index out of range");
    }
    DensityMatrix rho = DensityMatrix::Zero(dim, dim);
    rho(index, index) = 1.0;
    return rho;
}

Complex expectation(const DensityMatrix& rho, const Operator& a) {
    if (rho.rows() != a.rows() || rho.cols() != a.cols() || rho.rows() != rho.cols()) {
        throw ShapeError("expectation: operator and state dimensions differ");
    }
    return (a * rho).trace();
}

double hermiticity_defect(const Operator& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace trps
