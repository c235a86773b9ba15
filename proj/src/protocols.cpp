#include "floq/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace floq {

std::vector<double> SiteTimeSeries::site_column(int site) const {
    std::vector<double> v(times_ns.size());
    for (std::size_t i = 0; i < times_ns.size(); ++i)
        v[i] = values(static_cast<Eigen::Index>(i), site);
    return v;
}

namespace {

std::vector<std::uint8_t> neel_state(int n, int first = 0) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) occ[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((j + first) % 2);
    return occ;
}

int total_excitations(const std::vector<std::uint8_t>& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

std::shared_ptr<const Hamiltonian> make_hamiltonian(const DeviceSpec& device,
                                                    const DrivePattern& drive,
                                                    const ModelOptions& opts,
                                                    std::optional<int> sector) {
    DeviceSpec dev = opts.include_nnn ? device : device.without_nnn();
    if (opts.lab_frame) {
        dev.levels = opts.levels;
        return std::make_shared<LabHamiltonian>(build_lab_hamiltonian(dev, drive, sector));
    }
    dev.levels = 2;
    return std::make_shared<EffectiveHamiltonian>(build_effective_hamiltonian(
        dev, drive, opts.include_nnn, opts.include_zz, opts.zz_strength_mhz, sector));
}

// Integration step and sampling stride such that samples land exactly on the
// requested interval.
IntegratorConfig make_config(const Hamiltonian& ham, const ModelOptions& opts,
                             double sample_dt_ns) {
    IntegratorConfig cfg = IntegratorConfig::defaults_for(ham);
    if (opts.dt_ns) cfg.dt_ns = *opts.dt_ns;
    const int per_sample = std::max(1, static_cast<int>(std::ceil(sample_dt_ns / cfg.dt_ns - 1e-9)));
    cfg.dt_ns = sample_dt_ns / per_sample;
    cfg.sample_stride = per_sample;
    cfg.validate(ham);
    return cfg;
}

// Dense eigendecomposition used to apply exp(-i H t) exactly when H is
// time independent and the sector is small enough to diagonalize once.
struct ExactPropagator {
    Eigen::MatrixXcd vecs;
    Eigen::VectorXd vals;

    explicit ExactPropagator(const Hamiltonian& ham) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ham.dense_at(0.0));
        vecs = es.eigenvectors();
        vals = es.eigenvalues();
    }

    void apply(double t_ns, Eigen::VectorXcd& psi) const {
        Eigen::VectorXcd c = vecs.adjoint() * psi;
        const Complex i1(0.0, 1.0);
        for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-i1 * vals[k] * t_ns);
        psi = vecs * c;
    }
};

SiteTimeSeries populations_of(const Trajectory& traj) {
    SiteTimeSeries out;
    out.times_ns = traj.times_ns;
    const int n = traj.basis->n_sites();
    out.values.resize(static_cast<Eigen::Index>(traj.times_ns.size()), n);
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        out.values.row(static_cast<Eigen::Index>(i)) =
            level1_populations(traj.state_at(i)).transpose();
    return out;
}

}  // namespace

SiteTimeSeries run_rabi_pair(const DeviceSpec& device, double eps_mhz, double t_max_ns,
                             double nu_mhz) {
    if (eps_mhz < 0.0) throw std::invalid_argument("run_rabi_pair: eps must be >= 0");
    const DeviceSpec pair = device.n_sites == 2 ? device : device.truncate(2);
    DrivePattern drive = DrivePattern::none(2, nu_mhz);
    drive.amplitudes[0] = eps_mhz;

    auto ham = std::make_shared<LabHamiltonian>(build_lab_hamiltonian(pair, drive, 1));
    ModelOptions opts;
    // Stroboscopic sampling at the Floquet period suppresses micromotion.
    const double sample_dt = drive.period_ns();
    IntegratorConfig cfg = make_config(*ham, opts, sample_dt);

    auto basis = ham->basis();
    StateVector psi0 = product_state(basis, std::vector<std::uint8_t>{0, 1});
    Trajectory traj = evolve(psi0, *ham, 0.0, t_max_ns, cfg);
    return populations_of(traj);
}

WalkResult run_quantum_walk(const DeviceSpec& device, const DrivePattern& drive,
                            const std::vector<std::uint8_t>& initial, double t_max_ns,
                            const ModelOptions& opts) {
    if (static_cast<int>(initial.size()) != device.n_sites)
        throw std::invalid_argument("run_quantum_walk: initial state length mismatch");
    const int sector = total_excitations(initial);
    auto ham = make_hamiltonian(device, drive, opts, sector);
    const double sample_dt = opts.sample_dt_ns.value_or(2.0);
    IntegratorConfig cfg = make_config(*ham, opts, sample_dt);

    StateVector psi0 = product_state(ham->basis(), initial);
    Trajectory traj = evolve(psi0, *ham, 0.0, t_max_ns, cfg);

    WalkResult res;
    res.populations = populations_of(traj);
    res.trajectory = std::move(traj);
    res.initial = initial;
    res.drive = drive;
    res.levels = opts.lab_frame ? opts.levels : 2;
    return res;
}

ReversalResult run_reversed_evolution(const DeviceSpec& device, double eps_a_mhz,
                                      double eps_b_mhz, double half_time_ns,
                                      const ModelOptions& opts) {
    const int n = device.n_sites;
    const double nu = opts.nu_mhz;
    if (!opts.exact_reverse) {
        const double mismatch = std::abs(bessel_j0(eps_a_mhz / nu) + bessel_j0(eps_b_mhz / nu));
        if (mismatch > 1e-3)
            std::cerr << "floq: reversed evolution with |J0(eps_a/nu) + J0(eps_b/nu)| = "
                      << mismatch << "; the backward leg is not an exact sign flip\n";
    }
    DrivePattern drive_a = DrivePattern::staggered_odd(n, eps_a_mhz, nu);
    DrivePattern drive_b = DrivePattern::staggered_odd(n, eps_b_mhz, nu);

    const auto initial = neel_state(n, /*first=*/1);  // |1010...>
    const int sector = total_excitations(initial);
    auto ham_a = make_hamiltonian(device, drive_a, opts, sector);
    std::shared_ptr<const Hamiltonian> ham_b =
        opts.exact_reverse ? std::make_shared<ScaledHamiltonian>(ham_a, -1.0)
                           : make_hamiltonian(device, drive_b, opts, sector);

    const double sample_dt = opts.sample_dt_ns.value_or(2.0);
    IntegratorConfig cfg_a = make_config(*ham_a, opts, sample_dt);
    IntegratorConfig cfg_b = make_config(*ham_b, opts, sample_dt);

    StateVector psi0 = product_state(ham_a->basis(), initial);
    Trajectory fwd = evolve(psi0, *ham_a, 0.0, half_time_ns, cfg_a);
    StateVector mid{fwd.basis, fwd.final_amplitudes()};
    Trajectory bwd = evolve(mid, *ham_b, 0.0, half_time_ns, cfg_b);

    ReversalResult res;
    res.half_time_ns = half_time_ns;
    const int n_fwd = static_cast<int>(fwd.times_ns.size());
    const int n_bwd = static_cast<int>(bwd.times_ns.size());
    res.populations.times_ns.reserve(static_cast<std::size_t>(n_fwd + n_bwd - 1));
    res.populations.values.resize(n_fwd + n_bwd - 1, n);
    double max_l2 = 0.0;
    for (int i = 0; i < n_fwd; ++i) {
        res.populations.times_ns.push_back(fwd.times_ns[static_cast<std::size_t>(i)]);
        StateVector s = fwd.state_at(static_cast<std::size_t>(i));
        res.populations.values.row(i) = level1_populations(s).transpose();
        if (fwd.basis->levels() == 3) max_l2 = std::max(max_l2, level2_populations(s).maxCoeff());
    }
    for (int i = 1; i < n_bwd; ++i) {
        res.populations.times_ns.push_back(half_time_ns + bwd.times_ns[static_cast<std::size_t>(i)]);
        StateVector s = bwd.state_at(static_cast<std::size_t>(i));
        res.populations.values.row(n_fwd + i - 1) = level1_populations(s).transpose();
        if (bwd.basis->levels() == 3) max_l2 = std::max(max_l2, level2_populations(s).maxCoeff());
    }
    res.max_level2_population = max_l2;
    res.echo_fidelity = echo_fidelity(psi0, StateVector{bwd.basis, bwd.final_amplitudes()});
    return res;
}

std::vector<double> default_otoc_grid(double t_max_ns, double step_ns) {
    std::vector<double> grid;
    for (double t = 0.0; t <= t_max_ns + 1e-9; t += step_ns) grid.push_back(t);
    return grid;
}

OtocGrid run_otoc(const DeviceSpec& device, double eps_a_mhz, double eps_b_mhz,
                  Butterfly butterfly, const std::vector<double>& t_grid_ns,
                  const ModelOptions& opts) {
    if (!std::is_sorted(t_grid_ns.begin(), t_grid_ns.end()))
        throw std::invalid_argument("run_otoc: t_grid must be ascending");
    const int n = device.n_sites;
    const double nu = opts.nu_mhz;
    const int levels = opts.lab_frame ? opts.levels : 2;

    DrivePattern drive_a = DrivePattern::staggered_odd(n, eps_a_mhz, nu);
    DrivePattern drive_b = DrivePattern::staggered_odd(n, eps_b_mhz, nu);

    std::vector<std::uint8_t> initial;
    std::optional<int> sector;
    if (butterfly == Butterfly::Z) {
        initial = neel_state(n, /*first=*/0);  // |0101...>
        sector = total_excitations(initial);
    }

    auto ham_a = make_hamiltonian(device, drive_a, opts, sector);
    std::shared_ptr<const Hamiltonian> ham_b =
        opts.exact_reverse ? std::make_shared<ScaledHamiltonian>(ham_a, -1.0)
                           : make_hamiltonian(device, drive_b, opts, sector);
    auto basis = ham_a->basis();

    StateVector psi0 = butterfly == Butterfly::Z ? product_state(basis, initial)
                                                 : plus_product_state(basis);

    // V eigenvalues on the initial state: sz_j |0101..> = lambda_j |0101..>;
    // sx_j |+>^n = +|+>^n.
    Eigen::VectorXd lambda = Eigen::VectorXd::Ones(n);
    if (butterfly == Butterfly::Z)
        for (int j = 0; j < n; ++j)
            lambda[j] = initial[static_cast<std::size_t>(j)] ? 1.0 : -1.0;

    std::vector<OperatorMatrix> meas_x;
    if (butterfly == Butterfly::X) {
        meas_x.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            meas_x.push_back(levels == 3 ? site_operator(basis, j, SiteOpKind::SigmaX, 0.0)
                                         : site_operator(basis, j, SiteOpKind::Sx));
    }

    IntegratorConfig cfg_a = IntegratorConfig::defaults_for(*ham_a);
    IntegratorConfig cfg_b = IntegratorConfig::defaults_for(*ham_b);
    if (opts.dt_ns) cfg_a.dt_ns = cfg_b.dt_ns = *opts.dt_ns;
    cfg_a.validate(*ham_a);
    cfg_b.validate(*ham_b);

    // Long grids over a static model are much cheaper through a one-time
    // diagonalization; a dt override keeps the stepped path for convergence
    // studies.
    const bool exact_static = !ham_a->is_time_dependent() && !ham_b->is_time_dependent() &&
                              !opts.dt_ns && basis->dim() <= 4096;
    std::optional<ExactPropagator> prop_a, prop_b;
    if (exact_static) {
        prop_a.emplace(*ham_a);
        prop_b.emplace(*ham_b);
    }

    OtocGrid grid;
    grid.times_ns = t_grid_ns;
    grid.values.resize(static_cast<Eigen::Index>(t_grid_ns.size()), n);
    grid.valid.assign(t_grid_ns.size(), 1);
    grid.butterfly = butterfly;
    grid.eps_a_mhz = eps_a_mhz;
    grid.eps_b_mhz = eps_b_mhz;
    grid.levels = levels;
    grid.post_selected = (butterfly == Butterfly::Z && levels == 3);

    Eigen::VectorXcd psi_f = psi0.amplitudes;
    double t_now = 0.0;
    for (std::size_t gi = 0; gi < t_grid_ns.size(); ++gi) {
        const double t = t_grid_ns[gi];
        if (exact_static)
            prop_a->apply(t - t_now, psi_f);
        else
            advance(psi_f, *ham_a, t_now, t, cfg_a);
        t_now = t;

        StateVector branch{basis, psi_f};
        if (butterfly == Butterfly::Z)
            apply_gate_inplace(branch, n - 1, GateKind::Z);
        else if (levels == 3)
            apply_gate_inplace(branch, n - 1, GateKind::SigmaX, 1.0);
        else
            apply_gate_inplace(branch, n - 1, GateKind::X);

        if (exact_static)
            prop_b->apply(t, branch.amplitudes);
        else
            advance(branch.amplitudes, *ham_b, 0.0, t, cfg_b);

        if (grid.post_selected) {
            // Keep the qubit-subspace component of the fixed-excitation sector.
            for (std::size_t i = 0; i < basis->dim(); ++i) {
                auto occ = basis->occupation(i);
                for (std::uint8_t o : occ)
                    if (o > 1) {
                        branch.amplitudes[static_cast<Eigen::Index>(i)] = 0.0;
                        break;
                    }
            }
            const double kept = branch.amplitudes.squaredNorm();
            if (kept < 1e-12) {
                grid.valid[gi] = 0;
                grid.values.row(static_cast<Eigen::Index>(gi)).setZero();
                std::cerr << "floq: OTOC post-selection retained ~0 weight at t = " << t
                          << " ns; row marked invalid\n";
                continue;
            }
            branch.amplitudes /= std::sqrt(kept);
        }

        if (butterfly == Butterfly::Z) {
            const Eigen::VectorXd p1 = level1_populations(branch);
            for (int j = 0; j < n; ++j)
                grid.values(static_cast<Eigen::Index>(gi), j) = lambda[j] * (2.0 * p1[j] - 1.0);
        } else {
            for (int j = 0; j < n; ++j)
                grid.values(static_cast<Eigen::Index>(gi), j) =
                    expectation(branch, meas_x[static_cast<std::size_t>(j)]);
        }
    }
    return grid;
}

OtocGrid run_otoc_zz_free_fermion(int n_sites, double g_mhz,
                                  const std::vector<double>& t_grid_ns) {
    const int n = n_sites;
    const double g = angular(g_mhz);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j) h(j, j + 1) = h(j + 1, j) = g;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd Q = es.eigenvectors();
    const Eigen::VectorXd w = es.eigenvalues();

    // Neel |0101...>: site 1 empty.
    Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXd lambda(n);
    for (int j = 0; j < n; ++j) {
        const bool occupied = (j % 2 == 1);
        m0(j, j) = occupied ? 1.0 : 0.0;
        lambda[j] = occupied ? 1.0 : -1.0;
    }
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(n);
    flip[n - 1] = -1.0;

    OtocGrid grid;
    grid.times_ns = t_grid_ns;
    grid.values.resize(static_cast<Eigen::Index>(t_grid_ns.size()), n);
    grid.valid.assign(t_grid_ns.size(), 1);
    grid.butterfly = Butterfly::Z;
    grid.levels = 2;

    const Complex i1(0.0, 1.0);
    for (std::size_t gi = 0; gi < t_grid_ns.size(); ++gi) {
        const double t = t_grid_ns[gi];
        Eigen::VectorXcd phase(n);
        for (int k = 0; k < n; ++k) phase[k] = std::exp(-i1 * w[k] * t);
        const Eigen::MatrixXcd U = Q * phase.asDiagonal() * Q.transpose();
        // M tracks <c^dag_j c_i>; forward, sign flip on the last mode, backward.
        Eigen::MatrixXcd m = U * m0 * U.adjoint();
        m = flip.asDiagonal() * m * flip.asDiagonal();
        m = U.adjoint() * m * U;
        for (int j = 0; j < n; ++j)
            grid.values(static_cast<Eigen::Index>(gi), j) = lambda[j] * (2.0 * m(j, j).real() - 1.0);
    }
    return grid;
}

SshResult run_ssh_quench(const DeviceSpec& device, const DrivePattern& drive, double t_max_ns,
                         const ModelOptions& opts) {
    std::vector<std::uint8_t> initial(static_cast<std::size_t>(device.n_sites), 0);
    initial[0] = 1;

    auto ham = std::make_shared<EffectiveHamiltonian>(
        build_ssh_hamiltonian(opts.include_nnn ? device : device.without_nnn(), drive, 1));
    const double sample_dt = opts.sample_dt_ns.value_or(2.0);
    IntegratorConfig cfg = make_config(*ham, opts, sample_dt);

    StateVector psi0 = product_state(ham->basis(), initial);
    Trajectory traj = evolve(psi0, *ham, 0.0, t_max_ns, cfg);

    SshResult res;
    res.populations = populations_of(traj);
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < res.populations.times_ns.size(); ++i) {
        if (res.populations.times_ns[i] >= 0.5 * t_max_ns) {
            sum += res.populations.values(static_cast<Eigen::Index>(i), 0);
            ++count;
        }
    }
    res.edge_average = count ? sum / count : 0.0;
    return res;
}

}  // namespace floq
