#pragma once

#include <Eigen/Dense>
#include <complex>

#include "floq/basis.hpp"

namespace floq {

using Complex = std::complex<double>;

// Normalized amplitude vector over a FockBasis.
struct StateVector {
    BasisPtr basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    void assert_normalized(double tol = 1e-10) const;
};

// Basis state with the given occupations (amplitude 1 on the matching element).
StateVector product_state(const BasisPtr& basis, std::span<const std::uint8_t> occupations);
StateVector product_state(const BasisPtr& basis, const std::vector<std::uint8_t>& occ);

// Parse "0101..." into an occupation tuple.
std::vector<std::uint8_t> occupations_from_string(const std::string& s);

// |+>^n: uniform superposition over all two-level occupations; requires an
// unrestricted basis. For levels=3 the third-level components are zero.
StateVector plus_product_state(const BasisPtr& basis);

// Per-site excitation number <n_j> (counts level 2 as 2).
Eigen::VectorXd site_populations(const StateVector& state);

// Per-site probability of occupying exactly level 1 (the measured photon
// density P_j; identical to site_populations for levels=2).
Eigen::VectorXd level1_populations(const StateVector& state);

// Per-site probability of occupying level 2 (zero for levels=2 bases).
Eigen::VectorXd level2_populations(const StateVector& state);

}  // namespace floq
