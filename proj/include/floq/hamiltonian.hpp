// Hamiltonian assembly. Device inputs are linear frequencies in MHz; all
// matrices below are in angular units of rad/ns. The MHz -> rad/ns conversion
// happens here and nowhere else.

#pragma once

#include <memory>
#include <optional>

#include "floq/bessel.hpp"
#include "floq/operators.hpp"

namespace floq {

// omega = 2*pi * f[MHz] * 1e-3, in rad/ns.
inline double angular(double f_mhz) { return 2.0 * 3.141592653589793238463 * f_mhz * 1e-3; }

// g^eff = g * J0((eps_left - eps_right)/nu); signed amplitudes carry the
// staggered 0/pi drive phases.
double effective_coupling(double g_mhz, double eps_left_mhz, double eps_right_mhz,
                          double nu_mhz);

class Hamiltonian {
public:
    virtual ~Hamiltonian() = default;
    virtual const BasisPtr& basis() const = 0;
    virtual bool is_time_dependent() const = 0;
    virtual std::optional<double> period_ns() const { return std::nullopt; }
    // y = H(t) x, angular units.
    virtual void apply(double t_ns, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const = 0;
    // Upper bound on the operator norm, for exponential step scaling.
    virtual double norm_bound() const = 0;
    // Dense snapshot H(t); intended for small bases (oracles, tests).
    virtual Eigen::MatrixXcd dense_at(double t_ns) const;
};

// Lab-frame driven Bose-Hubbard chain:
//   H(t) = sum_j g_j (a^dag_j a_{j+1} + h.c.) [+ NNN hopping]
//        + cos(nu t) sum_j eps_j n_j  + sum_j (U_j/2) n_j (n_j - 1).
// The anharmonicity term is present only for levels = 3.
class LabHamiltonian final : public Hamiltonian {
public:
    LabHamiltonian(BasisPtr basis, SparseMatrixC static_part, Eigen::VectorXd drive_diag,
                   double nu_mhz);

    const BasisPtr& basis() const override { return basis_; }
    bool is_time_dependent() const override { return driven_; }
    std::optional<double> period_ns() const override;
    void apply(double t_ns, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
    double norm_bound() const override { return norm_bound_; }
    Eigen::MatrixXcd dense_at(double t_ns) const override;

    SparseMatrixC matrix_at(double t_ns) const;
    const SparseMatrixC& static_part() const { return static_; }
    double drive_frequency_mhz() const { return nu_mhz_; }

private:
    BasisPtr basis_;
    SparseMatrixC static_;           // rad/ns
    Eigen::VectorXd drive_diag_;     // rad/ns, per basis state
    double nu_mhz_;
    double nu_angular_;
    bool driven_;
    double norm_bound_;
};

// Time-independent effective spin model (optionally with NNN hopping and the
// diagonal ZZ correction). Always levels = 2.
class EffectiveHamiltonian final : public Hamiltonian {
public:
    EffectiveHamiltonian(BasisPtr basis, SparseMatrixC matrix,
                         std::vector<double> nn_effective_mhz, bool include_nnn,
                         bool include_zz, double zz_strength_mhz);

    const BasisPtr& basis() const override { return basis_; }
    bool is_time_dependent() const override { return false; }
    void apply(double t_ns, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
    double norm_bound() const override { return norm_bound_; }
    Eigen::MatrixXcd dense_at(double t_ns) const override;

    const SparseMatrixC& matrix() const { return matrix_; }
    // Effective NN couplings per bond, signed, MHz.
    const std::vector<double>& nn_effective_mhz() const { return nn_effective_; }
    bool include_nnn() const { return include_nnn_; }
    bool include_zz() const { return include_zz_; }
    double zz_strength_mhz() const { return zz_strength_; }

private:
    BasisPtr basis_;
    SparseMatrixC matrix_;
    std::vector<double> nn_effective_;
    bool include_nnn_;
    bool include_zz_;
    double zz_strength_;
    double norm_bound_;
};

// H scaled by a constant (used for the exact -H reference reversal).
class ScaledHamiltonian final : public Hamiltonian {
public:
    ScaledHamiltonian(std::shared_ptr<const Hamiltonian> inner, double scale)
        : inner_(std::move(inner)), scale_(scale) {}
    const BasisPtr& basis() const override { return inner_->basis(); }
    bool is_time_dependent() const override { return inner_->is_time_dependent(); }
    std::optional<double> period_ns() const override { return inner_->period_ns(); }
    void apply(double t_ns, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override {
        inner_->apply(t_ns, x, y);
        y *= scale_;
    }
    double norm_bound() const override { return std::abs(scale_) * inner_->norm_bound(); }
    Eigen::MatrixXcd dense_at(double t_ns) const override {
        return scale_ * inner_->dense_at(t_ns);
    }

private:
    std::shared_ptr<const Hamiltonian> inner_;
    double scale_;
};

LabHamiltonian build_lab_hamiltonian(const DeviceSpec& device, const DrivePattern& drive,
                                     std::optional<int> sector = {});

EffectiveHamiltonian build_effective_hamiltonian(const DeviceSpec& device,
                                                 const DrivePattern& drive,
                                                 bool include_nnn = false,
                                                 bool include_zz = false,
                                                 double zz_strength_mhz = 0.065,
                                                 std::optional<int> sector = {});

// SSH view of the effective model: same bond-by-bond construction, with the
// chain read as alternating intracell (odd) / intercell (even) bonds.
EffectiveHamiltonian build_ssh_hamiltonian(const DeviceSpec& device, const DrivePattern& drive,
                                           std::optional<int> sector = {});

struct SshCouplings {
    std::vector<double> intracell_mhz;  // bonds (1,2), (3,4), ...
    std::vector<double> intercell_mhz;  // bonds (2,3), (4,5), ...
};
SshCouplings ssh_couplings(const EffectiveHamiltonian& ham);

}  // namespace floq
