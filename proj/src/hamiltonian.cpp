#include "floq/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace floq {

double effective_coupling(double g_mhz, double eps_left_mhz, double eps_right_mhz,
                          double nu_mhz) {
    if (!(nu_mhz > 0.0)) throw std::invalid_argument("effective_coupling: nu must be > 0");
    return g_mhz * bessel_j0((eps_left_mhz - eps_right_mhz) / nu_mhz);
}

Eigen::MatrixXcd Hamiltonian::dense_at(double t_ns) const {
    const auto dim = static_cast<Eigen::Index>(basis()->dim());
    Eigen::MatrixXcd m(dim, dim);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), col(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        e[j] = 1.0;
        apply(t_ns, e, col);
        m.col(j) = col;
        e[j] = 0.0;
    }
    return m;
}

namespace {

double sparse_inf_norm(const SparseMatrixC& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(m, k); it; ++it)
            row_sums[it.row()] += std::abs(it.value());
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

// Hopping g (a^dag_i a_j + h.c.) accumulated as triplets over the basis.
void add_hopping(const BasisPtr& basis, int i, int j, double g_angular,
                 std::vector<Eigen::Triplet<Complex>>& trips) {
    if (g_angular == 0.0) return;
    const int n = basis->n_sites();
    const int d = basis->levels();
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n));
    for (std::size_t col = 0; col < basis->dim(); ++col) {
        auto src = basis->occupation(col);
        const int oi = src[static_cast<std::size_t>(i)];
        const int oj = src[static_cast<std::size_t>(j)];
        // a^dag_i a_j
        if (oj >= 1 && oi + 1 < d) {
            std::copy(src.begin(), src.end(), occ.begin());
            occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(oi + 1);
            occ[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(oj - 1);
            if (auto row = basis->index_of(occ)) {
                const double v = g_angular * std::sqrt(static_cast<double>(oi + 1)) *
                                 std::sqrt(static_cast<double>(oj));
                trips.emplace_back(static_cast<int>(*row), static_cast<int>(col), v);
            }
        }
        // a^dag_j a_i
        if (oi >= 1 && oj + 1 < d) {
            std::copy(src.begin(), src.end(), occ.begin());
            occ[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(oj + 1);
            occ[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(oi - 1);
            if (auto row = basis->index_of(occ)) {
                const double v = g_angular * std::sqrt(static_cast<double>(oj + 1)) *
                                 std::sqrt(static_cast<double>(oi));
                trips.emplace_back(static_cast<int>(*row), static_cast<int>(col), v);
            }
        }
    }
}

}  // namespace

LabHamiltonian::LabHamiltonian(BasisPtr basis, SparseMatrixC static_part,
                               Eigen::VectorXd drive_diag, double nu_mhz)
    : basis_(std::move(basis)),
      static_(std::move(static_part)),
      drive_diag_(std::move(drive_diag)),
      nu_mhz_(nu_mhz) {
    nu_angular_ = angular(nu_mhz_);
    driven_ = drive_diag_.size() > 0 && drive_diag_.cwiseAbs().maxCoeff() > 0.0;
    norm_bound_ = sparse_inf_norm(static_) +
                  (drive_diag_.size() ? drive_diag_.cwiseAbs().maxCoeff() : 0.0);
}

std::optional<double> LabHamiltonian::period_ns() const {
    if (!driven_) return std::nullopt;
    return 1000.0 / nu_mhz_;
}

void LabHamiltonian::apply(double t_ns, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    y.noalias() = static_ * x;
    if (driven_) {
        const double c = std::cos(nu_angular_ * t_ns);
        y.array() += (c * drive_diag_.array()).cast<Complex>() * x.array();
    }
}

SparseMatrixC LabHamiltonian::matrix_at(double t_ns) const {
    SparseMatrixC m = static_;
    const double c = driven_ ? std::cos(nu_angular_ * t_ns) : 0.0;
    if (driven_) {
        SparseMatrixC diag(m.rows(), m.cols());
        std::vector<Eigen::Triplet<Complex>> trips;
        for (Eigen::Index i = 0; i < drive_diag_.size(); ++i)
            if (drive_diag_[i] != 0.0)
                trips.emplace_back(static_cast<int>(i), static_cast<int>(i),
                                   Complex(c * drive_diag_[i], 0.0));
        diag.setFromTriplets(trips.begin(), trips.end());
        m += diag;
    }
    return m;
}

Eigen::MatrixXcd LabHamiltonian::dense_at(double t_ns) const {
    return Eigen::MatrixXcd(matrix_at(t_ns));
}

EffectiveHamiltonian::EffectiveHamiltonian(BasisPtr basis, SparseMatrixC matrix,
                                           std::vector<double> nn_effective_mhz,
                                           bool include_nnn, bool include_zz,
                                           double zz_strength_mhz)
    : basis_(std::move(basis)),
      matrix_(std::move(matrix)),
      nn_effective_(std::move(nn_effective_mhz)),
      include_nnn_(include_nnn),
      include_zz_(include_zz),
      zz_strength_(zz_strength_mhz) {
    norm_bound_ = sparse_inf_norm(matrix_);
}

void EffectiveHamiltonian::apply(double, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    y.noalias() = matrix_ * x;
}

Eigen::MatrixXcd EffectiveHamiltonian::dense_at(double) const {
    return Eigen::MatrixXcd(matrix_);
}

LabHamiltonian build_lab_hamiltonian(const DeviceSpec& device, const DrivePattern& drive,
                                     std::optional<int> sector) {
    device.validate();
    drive.validate();
    if (static_cast<int>(drive.amplitudes.size()) != device.n_sites)
        throw std::invalid_argument("build_lab_hamiltonian: drive/device site mismatch");

    auto basis = FockBasis::build(device.n_sites, device.levels, sector);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int j = 0; j + 1 < device.n_sites; ++j)
        add_hopping(basis, j, j + 1, angular(device.nn_couplings[static_cast<std::size_t>(j)]),
                    trips);
    for (int j = 0; j + 2 < device.n_sites && !device.nnn_couplings.empty(); ++j)
        add_hopping(basis, j, j + 2, angular(device.nnn_couplings[static_cast<std::size_t>(j)]),
                    trips);
    if (device.levels == 3) {
        for (std::size_t i = 0; i < basis->dim(); ++i) {
            auto occ = basis->occupation(i);
            double diag = 0.0;
            for (int j = 0; j < device.n_sites; ++j) {
                const double n = occ[static_cast<std::size_t>(j)];
                diag += 0.5 * angular(device.anharmonicities[static_cast<std::size_t>(j)]) * n *
                        (n - 1.0);
            }
            if (diag != 0.0)
                trips.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(diag, 0.0));
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis->dim());
    SparseMatrixC static_part(dim, dim);
    static_part.setFromTriplets(trips.begin(), trips.end());

    Eigen::VectorXd drive_diag = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        auto occ = basis->occupation(i);
        double v = 0.0;
        for (int j = 0; j < device.n_sites; ++j)
            v += angular(drive.amplitudes[static_cast<std::size_t>(j)]) *
                 occ[static_cast<std::size_t>(j)];
        drive_diag[static_cast<Eigen::Index>(i)] = v;
    }
    return LabHamiltonian(std::move(basis), std::move(static_part), std::move(drive_diag),
                          drive.drive_frequency);
}

EffectiveHamiltonian build_effective_hamiltonian(const DeviceSpec& device,
                                                 const DrivePattern& drive, bool include_nnn,
                                                 bool include_zz, double zz_strength_mhz,
                                                 std::optional<int> sector) {
    device.validate();
    drive.validate();
    if (device.levels != 2)
        throw std::invalid_argument(
            "build_effective_hamiltonian: the effective model is a spin-1/2 construction "
            "(levels must be 2)");
    if (static_cast<int>(drive.amplitudes.size()) != device.n_sites)
        throw std::invalid_argument("build_effective_hamiltonian: drive/device site mismatch");

    const int n = device.n_sites;
    const double nu = drive.drive_frequency;
    auto basis = FockBasis::build(n, 2, sector);

    std::vector<double> geff(static_cast<std::size_t>(n - 1));
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int j = 0; j + 1 < n; ++j) {
        geff[static_cast<std::size_t>(j)] =
            effective_coupling(device.nn_couplings[static_cast<std::size_t>(j)],
                               drive.amplitudes[static_cast<std::size_t>(j)],
                               drive.amplitudes[static_cast<std::size_t>(j + 1)], nu);
        add_hopping(basis, j, j + 1, angular(geff[static_cast<std::size_t>(j)]), trips);
    }
    if (include_nnn && !device.nnn_couplings.empty()) {
        // J0 of the amplitude difference across two sites; an extrapolation of
        // the NN renormalization law.
        for (int j = 0; j + 2 < n; ++j) {
            const double gn =
                effective_coupling(device.nnn_couplings[static_cast<std::size_t>(j)],
                                   drive.amplitudes[static_cast<std::size_t>(j)],
                                   drive.amplitudes[static_cast<std::size_t>(j + 2)], nu);
            add_hopping(basis, j, j + 2, angular(gn), trips);
        }
    }
    if (include_zz) {
        // -(zz/2) sum_j (1 + sz_j sz_{j+1}), diagonal in the occupation basis.
        const double w = angular(zz_strength_mhz);
        for (std::size_t i = 0; i < basis->dim(); ++i) {
            auto occ = basis->occupation(i);
            double diag = 0.0;
            for (int j = 0; j + 1 < n; ++j) {
                const double szl = occ[static_cast<std::size_t>(j)] ? 1.0 : -1.0;
                const double szr = occ[static_cast<std::size_t>(j + 1)] ? 1.0 : -1.0;
                diag += -0.5 * w * (1.0 + szl * szr);
            }
            if (diag != 0.0)
                trips.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(diag, 0.0));
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis->dim());
    SparseMatrixC mat(dim, dim);
    mat.setFromTriplets(trips.begin(), trips.end());
    return EffectiveHamiltonian(std::move(basis), std::move(mat), std::move(geff), include_nnn,
                                include_zz, include_zz ? zz_strength_mhz : 0.0);
}

EffectiveHamiltonian build_ssh_hamiltonian(const DeviceSpec& device, const DrivePattern& drive,
                                           std::optional<int> sector) {
    if (device.n_sites % 2 != 0)
        throw std::invalid_argument("build_ssh_hamiltonian: n_sites must be even");
    return build_effective_hamiltonian(device, drive, /*include_nnn=*/false,
                                       /*include_zz=*/false, 0.0, sector);
}

SshCouplings ssh_couplings(const EffectiveHamiltonian& ham) {
    SshCouplings c;
    const auto& g = ham.nn_effective_mhz();
    for (std::size_t j = 0; j < g.size(); ++j)
        (j % 2 == 0 ? c.intracell_mhz : c.intercell_mhz).push_back(g[j]);
    return c;
}

}  // namespace floq
