#include "floq/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace floq {

IntegratorConfig IntegratorConfig::defaults_for(const Hamiltonian& ham) {
    IntegratorConfig cfg;
    if (auto T = ham.period_ns()) {
        cfg.method = Method::CommutatorFree4;
        cfg.dt_ns = *T / 64.0;
    } else {
        cfg.dt_ns = 0.5;
    }
    return cfg;
}

void IntegratorConfig::validate(const Hamiltonian& ham) const {
    if (!(dt_ns > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    if (sample_stride < 1)
        throw std::invalid_argument("IntegratorConfig: sample_stride must be >= 1");
    if (auto T = ham.period_ns()) {
        if (dt_ns > *T / 32.0 + 1e-12)
            throw std::invalid_argument(
                "IntegratorConfig: dt must not exceed T/32 under an active drive");
    }
}

void exp_apply(const Hamiltonian& ham, double t_eval_ns, double dt_ns, Eigen::VectorXcd& psi) {
    const double theta = ham.norm_bound() * std::abs(dt_ns);
    const int segments = std::max(1, static_cast<int>(std::ceil(theta)));
    const Complex z(0.0, -dt_ns / segments);
    const double tol = 1e-16;

    Eigen::VectorXcd term = psi, next(psi.size());
    for (int s = 0; s < segments; ++s) {
        term = psi;
        const double base = psi.norm();
        for (int k = 1; k <= 60; ++k) {
            ham.apply(t_eval_ns, term, next);
            term = (z / static_cast<double>(k)) * next;
            psi += term;
            if (term.norm() < tol * base) break;
        }
    }
}

namespace {

// a1 H(t + c1 dt) + a2 H(t + c2 dt), frozen in time; feeds exp_apply.
class TwoPointCombo final : public Hamiltonian {
public:
    TwoPointCombo(const Hamiltonian& inner, double ta, double tb, double ca, double cb)
        : inner_(inner), ta_(ta), tb_(tb), ca_(ca), cb_(cb), tmp_() {}
    const BasisPtr& basis() const override { return inner_.basis(); }
    bool is_time_dependent() const override { return false; }
    void apply(double, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override {
        inner_.apply(ta_, x, y);
        y *= ca_;
        tmp_.resize(x.size());
        inner_.apply(tb_, x, tmp_);
        y += cb_ * tmp_;
    }
    double norm_bound() const override {
        return (std::abs(ca_) + std::abs(cb_)) * inner_.norm_bound();
    }

private:
    const Hamiltonian& inner_;
    double ta_, tb_, ca_, cb_;
    mutable Eigen::VectorXcd tmp_;
};

// Fourth-order commutator-free Magnus step: two exponentials built from the
// Gauss nodes t + (1/2 -+ sqrt(3)/6) dt with weights 1/4 +- sqrt(3)/6.
void cf4_step(const Hamiltonian& ham, double t_ns, double dt, Eigen::VectorXcd& psi) {
    constexpr double r = 0.28867513459481287;  // sqrt(3)/6
    const double t1 = t_ns + (0.5 - r) * dt;
    const double t2 = t_ns + (0.5 + r) * dt;
    const TwoPointCombo early(ham, t1, t2, 0.25 + r, 0.25 - r);
    const TwoPointCombo late(ham, t1, t2, 0.25 - r, 0.25 + r);
    exp_apply(early, 0.0, dt, psi);
    exp_apply(late, 0.0, dt, psi);
}

void rk4_step(const Hamiltonian& ham, double t_ns, double dt, Eigen::VectorXcd& psi) {
    const Complex mi(0.0, -1.0);
    Eigen::VectorXcd k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()),
        tmp(psi.size());
    ham.apply(t_ns, psi, k1);
    k1 *= mi;
    tmp = psi + 0.5 * dt * k1;
    ham.apply(t_ns + 0.5 * dt, tmp, k2);
    k2 *= mi;
    tmp = psi + 0.5 * dt * k2;
    ham.apply(t_ns + 0.5 * dt, tmp, k3);
    k3 *= mi;
    tmp = psi + dt * k3;
    ham.apply(t_ns + dt, tmp, k4);
    k4 *= mi;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > 1e-6)
        throw std::runtime_error("rk4: per-step norm drift exceeds 1e-6; reduce dt");
    psi /= nrm;
}

}  // namespace

void advance(Eigen::VectorXcd& psi, const Hamiltonian& ham, double t0_ns, double t1_ns,
             const IntegratorConfig& cfg) {
    cfg.validate(ham);
    if (t1_ns == t0_ns) return;
    if (t1_ns < t0_ns) throw std::invalid_argument("advance: t1 must be >= t0");
    const double span = t1_ns - t0_ns;
    const auto n_steps = static_cast<long>(std::ceil(span / cfg.dt_ns - 1e-9));
    const double dt = span / static_cast<double>(n_steps);
    for (long k = 0; k < n_steps; ++k) {
        const double t = t0_ns + k * dt;
        switch (cfg.method) {
            case IntegratorConfig::Method::PiecewiseExponentialMidpoint:
                exp_apply(ham, t + 0.5 * dt, dt, psi);
                break;
            case IntegratorConfig::Method::CommutatorFree4:
                cf4_step(ham, t, dt, psi);
                break;
            case IntegratorConfig::Method::Rk4:
                rk4_step(ham, t, dt, psi);
                break;
        }
        if (!psi.allFinite())
            throw std::runtime_error("advance: non-finite amplitudes (integration unstable)");
    }
}

Trajectory evolve(const StateVector& state, const Hamiltonian& ham, double t0_ns, double t1_ns,
                  const IntegratorConfig& cfg) {
    cfg.validate(ham);
    if (state.basis.get() != ham.basis().get())
        throw std::invalid_argument("evolve: state/Hamiltonian basis mismatch");
    if (t1_ns < t0_ns) throw std::invalid_argument("evolve: t1 must be >= t0");
    state.assert_normalized();

    Trajectory traj;
    traj.basis = state.basis;
    Eigen::VectorXcd psi = state.amplitudes;
    traj.times_ns.push_back(t0_ns);
    traj.states.push_back(psi);
    if (t1_ns == t0_ns) return traj;

    const double span = t1_ns - t0_ns;
    const auto n_steps = static_cast<long>(std::ceil(span / cfg.dt_ns - 1e-9));
    const double dt = span / static_cast<double>(n_steps);
    for (long k = 0; k < n_steps; ++k) {
        const double t = t0_ns + k * dt;
        switch (cfg.method) {
            case IntegratorConfig::Method::PiecewiseExponentialMidpoint:
                exp_apply(ham, t + 0.5 * dt, dt, psi);
                break;
            case IntegratorConfig::Method::CommutatorFree4:
                cf4_step(ham, t, dt, psi);
                break;
            case IntegratorConfig::Method::Rk4:
                rk4_step(ham, t, dt, psi);
                break;
        }
        if (!psi.allFinite())
            throw std::runtime_error("evolve: non-finite amplitudes (integration unstable)");
        if ((k + 1) % cfg.sample_stride == 0 || k + 1 == n_steps) {
            traj.times_ns.push_back(t0_ns + (k + 1) * dt);
            traj.states.push_back(psi);
        }
    }
    StateVector{traj.basis, psi}.assert_normalized(1e-8);
    return traj;
}

Trajectory evolve(const StateVector& state, const Hamiltonian& ham, double t0_ns, double t1_ns) {
    return evolve(state, ham, t0_ns, t1_ns, IntegratorConfig::defaults_for(ham));
}

double echo_fidelity(const StateVector& a, const StateVector& b) {
    if (a.basis.get() != b.basis.get())
        throw std::invalid_argument("echo_fidelity: basis mismatch");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

}  // namespace floq
