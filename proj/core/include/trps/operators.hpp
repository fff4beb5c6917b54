#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace trps {

using Complex = std::complex<double>;

/// Dense operator on a truncated Hilbert space. Entries carry angular
/// frequencies in GHz for Hamiltonians (time unit: ns, 1 GHz == 1 rad/ns)
/// and are dimensionless for ladder/projection operators.
using Operator = Eigen::MatrixXcd;

/// System state: Hermitian, unit-trace, positive semidefinite.
using DensityMatrix = Eigen::MatrixXcd;

/// Lowering operators on the joint single-excitation space
/// {|vac>, |1_1>, ..., |1_n>}. Operator j maps |1_j> -> |vac> and
/// annihilates every other basis state.
std::vector<Operator> ladder_operators(int mode_count);

/// Single lowering operator |vac><1_j| on a dim-dimensional space (mode
/// index j in [1, dim-1], 0 is the vacuum).
Operator lowering_operator(int dim, int mode_index);

/// |index><index| as a density matrix.
DensityMatrix basis_state(int dim, int index);

/// Tr(A rho). Real up to numerical noise when A is Hermitian.
Complex expectation(const DensityMatrix& rho, const Operator& a);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const Operator& m);

inline bool is_hermitian(const Operator& m, double tol = 1e-12) {
    return hermiticity_defect(m) <= tol;
}

}  // namespace trps
