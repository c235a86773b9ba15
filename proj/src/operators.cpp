#include "floq/operators.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace floq {

bool OperatorMatrix::is_hermitian(double tol) const {
    SparseMatrixC diff = SparseMatrixC(matrix.adjoint()) - matrix;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(diff, k); it; ++it)
            if (std::abs(it.value()) > tol) return false;
    return true;
}

bool OperatorMatrix::is_unitary(double tol) const {
    // Check on the support: columns that are touched must map to orthonormal images.
    SparseMatrixC prod = SparseMatrixC(matrix.adjoint()) * matrix;
    std::vector<bool> touched(static_cast<std::size_t>(matrix.cols()), false);
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(matrix, k); it; ++it)
            touched[static_cast<std::size_t>(it.col())] = true;
    for (int k = 0; k < prod.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(prod, k); it; ++it) {
            const double expect =
                (it.row() == it.col() && touched[static_cast<std::size_t>(it.col())]) ? 1.0 : 0.0;
            if (std::abs(it.value() - expect) > tol) return false;
        }
    return true;
}

Eigen::MatrixXcd local_site_matrix(SiteOpKind kind, int d, double eta) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const Complex i1(0.0, 1.0);
    switch (kind) {
        case SiteOpKind::Lower:
            for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
            break;
        case SiteOpKind::Raise:
            for (int n = 1; n < d; ++n) m(n, n - 1) = std::sqrt(static_cast<double>(n));
            break;
        case SiteOpKind::Number:
            for (int n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
            break;
        case SiteOpKind::Sx:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case SiteOpKind::Sy:
            // Chosen so that sx*sy = i*sz with sz = diag(-1,+1).
            m(0, 1) = i1;
            m(1, 0) = -i1;
            break;
        case SiteOpKind::Sz:
            m(0, 0) = -1.0;
            m(1, 1) = 1.0;
            break;
        case SiteOpKind::SigmaPlus:
            m(1, 0) = 1.0;
            break;
        case SiteOpKind::SigmaMinus:
            m(0, 1) = 1.0;
            break;
        case SiteOpKind::SigmaX:
            if (d == 2) {
                std::cerr << "floq: SigmaX requested with levels=2; "
                             "falling back to the 2x2 Pauli x\n";
                m(0, 1) = 1.0;
                m(1, 0) = 1.0;
            } else {
                m(0, 1) = 1.0;
                m(1, 0) = 1.0;
                m(2, 2) = eta;
            }
            break;
    }
    return m;
}

OperatorMatrix embed_local(const BasisPtr& basis, int site, const Eigen::MatrixXcd& local) {
    const int n = basis->n_sites();
    const int d = basis->levels();
    if (site < 0 || site >= n) throw std::invalid_argument("embed_local: site out of range");
    if (local.rows() != d || local.cols() != d)
        throw std::invalid_argument("embed_local: local matrix must be d x d");

    const auto dim = static_cast<Eigen::Index>(basis->dim());
    std::vector<Eigen::Triplet<Complex>> trips;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n));
    for (std::size_t col = 0; col < basis->dim(); ++col) {
        auto src = basis->occupation(col);
        const int o = src[static_cast<std::size_t>(site)];
        for (int r = 0; r < d; ++r) {
            const Complex v = local(r, o);
            if (v == Complex(0.0, 0.0)) continue;
            if (r == o) {
                trips.emplace_back(static_cast<int>(col), static_cast<int>(col), v);
                continue;
            }
            std::copy(src.begin(), src.end(), occ.begin());
            occ[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(r);
            auto row = basis->index_of(occ);
            if (!row) continue;  // leaves the sector
            trips.emplace_back(static_cast<int>(*row), static_cast<int>(col), v);
        }
    }
    SparseMatrixC mat(dim, dim);
    mat.setFromTriplets(trips.begin(), trips.end());
    return OperatorMatrix{basis, std::move(mat)};
}

OperatorMatrix site_operator(const BasisPtr& basis, int site, SiteOpKind kind, double eta) {
    return embed_local(basis, site, local_site_matrix(kind, basis->levels(), eta));
}

double expectation(const StateVector& state, const OperatorMatrix& op) {
    if (state.basis.get() != op.basis.get())
        throw std::invalid_argument("expectation: basis mismatch");
    const Complex v = state.amplitudes.dot(op.matrix * state.amplitudes);
    if (std::abs(v.imag()) > 1e-10)
        throw std::runtime_error("expectation: imaginary residue exceeds 1e-10");
    return v.real();
}

Eigen::MatrixXcd gate_matrix(GateKind kind, int d, double eta) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::X:
            m(0, 0) = 0.0; m(1, 1) = 0.0;
            m(0, 1) = 1.0; m(1, 0) = 1.0;
            break;
        case GateKind::Z:
            m(1, 1) = -1.0;  // level 2 keeps the full 2pi phase
            break;
        case GateKind::YHalfPi:
            m(0, 0) = s;  m(0, 1) = -s;
            m(1, 0) = s;  m(1, 1) = s;
            break;
        case GateKind::SigmaX:
            if (d == 2) {
                m(0, 0) = 0.0; m(1, 1) = 0.0;
                m(0, 1) = 1.0; m(1, 0) = 1.0;
            } else {
                m = local_site_matrix(SiteOpKind::SigmaX, d, eta);
            }
            break;
    }
    return m;
}

void apply_gate_inplace(StateVector& state, int site, GateKind kind, double eta) {
    const auto& basis = *state.basis;
    const int n = basis.n_sites();
    const int d = basis.levels();
    if (site < 0 || site >= n) throw std::invalid_argument("apply_gate: site out of range");
    const Eigen::MatrixXcd local = gate_matrix(kind, d, eta);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes.size());
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(i)];
        if (amp == Complex(0.0, 0.0)) continue;
        auto src = basis.occupation(i);
        const int o = src[static_cast<std::size_t>(site)];
        for (int r = 0; r < d; ++r) {
            const Complex v = local(r, o);
            if (v == Complex(0.0, 0.0)) continue;
            if (r == o) {
                out[static_cast<Eigen::Index>(i)] += v * amp;
                continue;
            }
            std::copy(src.begin(), src.end(), occ.begin());
            occ[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(r);
            auto tgt = basis.index_of(occ);
            if (!tgt) throw std::invalid_argument("apply_gate: gate leaves the basis sector");
            out[static_cast<Eigen::Index>(*tgt)] += v * amp;
        }
    }
    state.amplitudes = std::move(out);
}

StateVector apply_gate(const StateVector& state, int site, GateKind kind, double eta) {
    StateVector out = state;
    apply_gate_inplace(out, site, kind, eta);
    return out;
}

}  // namespace floq
