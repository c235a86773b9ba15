// Readout confusion model, shot sampling, calibration-matrix correction, and
// excitation-number post-selection.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "floq/state.hpp"

namespace floq {

// Per-site readout fidelities: F_g = P(read 0 | prepared 0),
// F_e = P(read 1 | prepared 1). The 2x2 calibration matrix per site is
//   T = [[F_g, 1 - F_e], [1 - F_g, F_e]],
// invertible whenever F_g + F_e > 1.
struct ConfusionModel {
    std::vector<double> f_ground;
    std::vector<double> f_excited;

    int n_sites() const { return static_cast<int>(f_ground.size()); }
    void validate() const;

    static ConfusionModel ideal(int n);
    // Measured fidelities of the 10-qubit device.
    static ConfusionModel paper_10q();
};

// Bitstring histogram; bit j (1-based site j+1) is 1 << j on the key, site 1
// in the lowest bit.
struct ShotCounts {
    int n_sites = 0;
    long total = 0;
    std::map<std::uint64_t, long> counts;
};

// Projective shots through the confusion model. Level-2 weight is folded to
// outcome "1" before the per-site bit flips (dispersive misclassification
// model). Deterministic for a fixed seed (mt19937_64).
ShotCounts sample_shots(const StateVector& state, const ConfusionModel& confusion,
                        long n_shots, std::uint64_t seed);

struct CalibratedMarginals {
    Eigen::VectorXd p1;  // per-site excited probability after T^-1
    bool clipped = false;
};

// Per-site marginal corrected by T_j^-1; values clipped to [0, 1].
CalibratedMarginals calibrate_counts(const ShotCounts& counts, const ConfusionModel& confusion);

// Full-distribution correction: applies the tensor product of T_j^-1 to the
// observed bitstring distribution. Quasi-probabilities may be negative.
// Dense over 2^n outcomes; n_sites <= 20.
std::vector<double> calibrate_distribution(const ShotCounts& counts,
                                           const ConfusionModel& confusion);

struct PostSelected {
    ShotCounts counts;
    double kept_fraction = 0.0;
};

// Keeps bitstrings with the given Hamming weight. Throws when nothing
// survives.
PostSelected post_select(const ShotCounts& counts, int n_excitations);

// Calibrate-then-post-select marginals: the corrected distribution restricted
// to the fixed-weight sector, renormalized, reduced to per-site P_1. Matches
// the sector populations of the underlying state in expectation.
Eigen::VectorXd calibrated_sector_marginals(const ShotCounts& counts,
                                            const ConfusionModel& confusion,
                                            int n_excitations);

}  // namespace floq
