#include "floq/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floq {

void StateVector::assert_normalized(double tol) const {
    if (std::abs(norm() - 1.0) > tol)
        throw std::runtime_error("StateVector: norm drifted beyond tolerance");
}

StateVector product_state(const BasisPtr& basis, std::span<const std::uint8_t> occupations) {
    auto idx = basis->index_of(occupations);
    if (!idx)
        throw std::invalid_argument("product_state: occupation tuple not in basis/sector");
    StateVector s{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()))};
    s.amplitudes[static_cast<Eigen::Index>(*idx)] = 1.0;
    return s;
}

StateVector product_state(const BasisPtr& basis, const std::vector<std::uint8_t>& occ) {
    return product_state(basis, std::span<const std::uint8_t>(occ));
}

std::vector<std::uint8_t> occupations_from_string(const std::string& s) {
    std::vector<std::uint8_t> occ;
    occ.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '2')
            throw std::invalid_argument("occupations_from_string: digits must be 0..2");
        occ.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return occ;
}

StateVector plus_product_state(const BasisPtr& basis) {
    if (basis->sector())
        throw std::invalid_argument(
            "plus_product_state: |+>^n is not number-conserving; basis must be unrestricted");
    const int n = basis->n_sites();
    const double amp = std::pow(2.0, -0.5 * n);
    StateVector s{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()))};
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        auto occ = basis->occupation(i);
        bool qubit_subspace = true;
        for (std::uint8_t o : occ)
            if (o > 1) { qubit_subspace = false; break; }
        if (qubit_subspace) s.amplitudes[static_cast<Eigen::Index>(i)] = amp;
    }
    return s;
}

namespace {
Eigen::VectorXd accumulate_populations(const StateVector& state, int level_weighting) {
    const auto& basis = *state.basis;
    const int n = basis.n_sites();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const double w = std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
        if (w == 0.0) continue;
        auto occ = basis.occupation(i);
        for (int j = 0; j < n; ++j) {
            const int o = occ[static_cast<std::size_t>(j)];
            double f = 0.0;
            switch (level_weighting) {
                case 0: f = static_cast<double>(o); break;  // <n_j>
                case 1: f = (o == 1) ? 1.0 : 0.0; break;
                case 2: f = (o == 2) ? 1.0 : 0.0; break;
            }
            p[j] += f * w;
        }
    }
    return p;
}
}  // namespace

Eigen::VectorXd site_populations(const StateVector& state) {
    return accumulate_populations(state, 0);
}

Eigen::VectorXd level1_populations(const StateVector& state) {
    return accumulate_populations(state, 1);
}

Eigen::VectorXd level2_populations(const StateVector& state) {
    return accumulate_populations(state, 2);
}

}  // namespace floq
