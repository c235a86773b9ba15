// Schrodinger integration. Exponential steps are evaluated through a scaled
// truncated Taylor action on the state. Available schemes: second-order
// midpoint exponential U_k = exp(-i H(t_k + dt/2) dt), a fourth-order
// commutator-free two-exponential step (default under a drive), and RK4 for
// cross-checks.

#pragma once

#include <vector>

#include "floq/hamiltonian.hpp"

namespace floq {

struct IntegratorConfig {
    // CommutatorFree4 is a 4th-order two-exponential Magnus scheme (Gauss
    // nodes); it is the default under a drive because the midpoint rule needs
    // dt ~ T/2048 to pass the step-halving bound at these drive amplitudes.
    enum class Method { PiecewiseExponentialMidpoint, Rk4, CommutatorFree4 };
    Method method = Method::PiecewiseExponentialMidpoint;
    double dt_ns = 0.5;
    int sample_stride = 1;  // record every sample_stride-th step

    // Driven: CommutatorFree4 with dt = T/64. Undriven: midpoint exponential
    // (exact for a constant H) with dt = 0.5 ns.
    static IntegratorConfig defaults_for(const Hamiltonian& ham);

    // Rejects dt > T/32 when a drive is active.
    void validate(const Hamiltonian& ham) const;
};

struct Trajectory {
    BasisPtr basis;
    std::vector<double> times_ns;
    std::vector<Eigen::VectorXcd> states;

    StateVector state_at(std::size_t i) const { return StateVector{basis, states.at(i)}; }
    const Eigen::VectorXcd& final_amplitudes() const { return states.back(); }
};

// psi <- exp(-i * H(t_eval) * dt) psi; error below 1e-9 per step for
// ||H dt|| <= 1 (the step is subdivided above that).
void exp_apply(const Hamiltonian& ham, double t_eval_ns, double dt_ns, Eigen::VectorXcd& psi);

// Advance in place from t0 to t1 without recording snapshots.
void advance(Eigen::VectorXcd& psi, const Hamiltonian& ham, double t0_ns, double t1_ns,
             const IntegratorConfig& cfg);

Trajectory evolve(const StateVector& state, const Hamiltonian& ham, double t0_ns, double t1_ns,
                  const IntegratorConfig& cfg);

Trajectory evolve(const StateVector& state, const Hamiltonian& ham, double t0_ns, double t1_ns);

// |<a|b>|^2.
double echo_fidelity(const StateVector& a, const StateVector& b);

}  // namespace floq
