// Experiment protocols: two-qubit Rabi calibration, quantum walks, reversed
// time evolution, ZZ/XX out-of-time-order correlators, and the SSH quench.

#pragma once

#include <functional>
#include <string>

#include "floq/propagator.hpp"

namespace floq {

// Site-resolved samples: one row per time, one column per site.
struct SiteTimeSeries {
    std::vector<double> times_ns;
    Eigen::MatrixXd values;

    std::vector<double> site_column(int site) const;  // 0-based
};

struct ModelOptions {
    int levels = 2;
    bool lab_frame = false;   // false: effective spin model
    bool include_nnn = false;
    bool include_zz = false;
    double zz_strength_mhz = 0.065;
    double nu_mhz = 120.0;
    // Backward legs: sign-flipped J0 via the eps_b drive by default; exact -H
    // reference reversal when set (oracle/benchmark mode).
    bool exact_reverse = false;
    std::optional<double> dt_ns;       // integrator override
    std::optional<double> sample_dt_ns;  // observable sampling interval
};

struct WalkResult {
    SiteTimeSeries populations;
    Trajectory trajectory;  // sampled states, for shot-based readout
    std::vector<std::uint8_t> initial;
    DrivePattern drive;
    int levels = 2;
};

struct ReversalResult {
    SiteTimeSeries populations;        // level-1 probability per site
    double echo_fidelity = 0.0;        // |<psi(0)|psi(2*half_time)>|^2
    double max_level2_population = 0.0;
    double half_time_ns = 0.0;
};

enum class Butterfly { Z, X };

struct OtocGrid {
    std::vector<double> times_ns;
    Eigen::MatrixXd values;            // rows: times, cols: sites
    std::vector<std::uint8_t> valid;   // per row; 0 when post-selection emptied
    Butterfly butterfly = Butterfly::Z;
    double eps_a_mhz = 0.0, eps_b_mhz = 0.0;
    int levels = 2;
    bool post_selected = false;

    SiteTimeSeries to_series() const { return SiteTimeSeries{times_ns, values}; }
};

struct SshResult {
    SiteTimeSeries populations;
    double edge_average = 0.0;  // time-averaged P_1 over [t_max/2, t_max]
};

// Excitation oscillation between the first two sites: drive on site 1 only,
// initial |01>, P_1(t) and P_2(t) sampled stroboscopically.
SiteTimeSeries run_rabi_pair(const DeviceSpec& device, double eps_mhz, double t_max_ns,
                             double nu_mhz = 120.0);

WalkResult run_quantum_walk(const DeviceSpec& device, const DrivePattern& drive,
                            const std::vector<std::uint8_t>& initial, double t_max_ns,
                            const ModelOptions& opts = {});

// Neel state forward under eps_a for half_time, then under eps_b; returns
// populations over [0, 2*half_time] and the echo fidelity.
ReversalResult run_reversed_evolution(const DeviceSpec& device, double eps_a_mhz,
                                      double eps_b_mhz, double half_time_ns,
                                      const ModelOptions& opts = {});

// For each t: forward under eps_a, butterfly gate on the last site, backward
// under eps_b (or exact -H), then the per-site measurement. Z runs start from
// the Neel state and, for levels=3, post-select on the initial excitation
// number with no level-2 occupancy; X runs start from |+>^n.
OtocGrid run_otoc(const DeviceSpec& device, double eps_a_mhz, double eps_b_mhz,
                  Butterfly butterfly, const std::vector<double>& t_grid_ns,
                  const ModelOptions& opts = {});

// Default grid 0..250 ns in 2 ns steps.
std::vector<double> default_otoc_grid(double t_max_ns = 250.0, double step_ns = 2.0);

// Exact ZZ OTOC for a uniform NN-only chain via the free-fermion picture
// (exact -H reversal). Used for large homogeneous benchmarks; agrees with
// run_otoc on small chains.
OtocGrid run_otoc_zz_free_fermion(int n_sites, double g_mhz,
                                  const std::vector<double>& t_grid_ns);

// Single excitation on site 1 under the SSH drive pattern.
SshResult run_ssh_quench(const DeviceSpec& device, const DrivePattern& drive, double t_max_ns,
                         const ModelOptions& opts = {});

}  // namespace floq
