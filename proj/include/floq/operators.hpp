// Site-local operators over a FockBasis, stored sparse. The Pauli-z
// convention is sz = diag(-1, +1) in occupation order (|0>, |1>), so
// <sz> = 2<n> - 1 on the qubit subspace.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "floq/device.hpp"
#include "floq/state.hpp"

namespace floq {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

struct OperatorMatrix {
    BasisPtr basis;
    SparseMatrixC matrix;

    bool is_hermitian(double tol = 1e-12) const;

    // Max |<U U^dag - I>| entry on the operator's support.
    bool is_unitary(double tol = 1e-12) const;
};

enum class SiteOpKind {
    Lower,       // a
    Raise,       // a^dag
    Number,      // n
    Sx,          // Pauli x on {|0>,|1>}, annihilates level 2
    Sy,          // Pauli y, ditto
    Sz,          // diag(-1, +1) on {|0>,|1>}, annihilates level 2
    SigmaPlus,   // raising on the qubit subspace
    SigmaMinus,  // lowering on the qubit subspace
    SigmaX,      // 3-level X with parameter eta on level 2
};

// Local matrix in occupation order; d is the basis levels.
Eigen::MatrixXcd local_site_matrix(SiteOpKind kind, int d, double eta = 1.0);

// Identity everywhere except a local matrix on `site` (0-based). Matrix
// elements that would leave a sector-restricted basis are dropped.
OperatorMatrix site_operator(const BasisPtr& basis, int site, SiteOpKind kind,
                             double eta = 1.0);

// Build an operator from an arbitrary local matrix on one site.
OperatorMatrix embed_local(const BasisPtr& basis, int site, const Eigen::MatrixXcd& local);

// <state| op |state>; asserts the imaginary residue is below 1e-10.
double expectation(const StateVector& state, const OperatorMatrix& op);

// Local unitary for a gate kind: X and Z act as identity on level 2 (Z picks
// up the full 2pi phase there), YHalfPi rotates |0> -> (|0>+|1>)/sqrt(2),
// SigmaX swaps |0>,|1> with eta on level 2.
Eigen::MatrixXcd gate_matrix(GateKind kind, int d, double eta = 1.0);

// Apply a single-site gate in place. Norm is preserved exactly for unitary
// gates; SigmaX(eta=0) truncates level-2 amplitudes without renormalizing.
void apply_gate_inplace(StateVector& state, int site, GateKind kind, double eta = 1.0);

StateVector apply_gate(const StateVector& state, int site, GateKind kind, double eta = 1.0);

}  // namespace floq
